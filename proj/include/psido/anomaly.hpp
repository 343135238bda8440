#pragma once

// Multiplicative-anomaly machinery: the commutator defect L(A,B) of the
// logarithm, the squared-log combination K(A,B), the derivative family
// W(tau), the tau-integral formula for tr^Q(L), weighted and zeta
// determinants, and the local anomaly formula checked against the spectral
// oracle.

#include <optional>

#include "psido/spectral.hpp"
#include "psido/trace.hpp"

namespace psido {

struct AnomalyOptions {
    int tau_nodes = 16;      // Gauss-Legendre nodes on [0,1]
    bool tau_doubling = true;  // re-run with doubled nodes and compare
    double t_step = 1e-3;    // centered-difference step for d/dt at t=0
    TraceOptions trace;      // finite-part flavor for the trace-side checks
    std::optional<double> path_cut;  // cut for log(A^t A^tau B); auto if unset
};

// L(A,B) = log_psi(AB) - log_theta(A) - log_phi(B); classical of order 0
// (the log coefficients cancel; this is asserted and the rows stripped).
Symbol L_symbol(const Operator& a, const Operator& b, double psi);

// K(A,B) = log^2(AB)/(2(a+b)) - log^2(A)/(2a) - log^2(B)/(2b); log type 1.
Symbol K_symbol(const Operator& a, const Operator& b, double psi);

// W(tau) = d/dt|_{t=0} log(A^t A^tau B) - log A, classical of order 0.
Symbol W_tau(const Operator& a, const Operator& b, double tau, double psi,
             const AnomalyOptions& opt = {});

// Integral formula: tr^Q(L(A,B)) =
//   int_0^1 res( W(tau) # (log(A^tau B)/(a tau + b) - log Q / q) ) d tau.
struct TauIntegral {
    cd value{0};
    std::vector<double> nodes;
    std::vector<cd> integrand;
    double doubling_gap = 0;  // |16-node - 32-node| when doubling is on
};
TauIntegral trQ_L(const Operator& a, const Operator& b, const Operator& q,
                  double psi, const AnomalyOptions& opt = {});

// log det_zeta(A) = fp-trace(log A) - (1/2a) res(log A # log A).
cd log_det_zeta_local(const Operator& a, const TraceOptions& opt = {});

// log det^Q(A) = tr^Q(log A).
cd log_det_weighted(const Operator& a, const Operator& q, const TraceOptions& opt = {});

// log det_zeta(A) - log det^Q(A) + (1/2a) res((log A - (a/q) log Q)^#2);
// vanishes identically (Ducourtioux relation).
cd ducourtioux_gap(const Operator& a, const Operator& q, const TraceOptions& opt = {});

// Commuting-case closed form (ab/(2(a+b))) res((log A / a - log B / b)^#2).
cd anomaly_commuting_local(const Operator& a, const Operator& b);

struct AnomalyReport {
    double psi = 0;                    // cut used for AB
    bool commuting = false;
    cd log_M_local{0};                 // B-weighted assembly
    cd log_M_swapped{0};               // A-weighted assembly
    cd trQL_term{0};                   // tau integral (Q = B)
    cd residue_term{0};                // res(L # log B / b - K)
    std::optional<cd> log_M_spectral;  // oracle, when requested
    double discrepancy = 0;            // |local - spectral|
    TauIntegral tau;                   // integrand record (Q = B)
};

// Local multiplicative anomaly log M_zeta(A,B); runs the spectral oracle too
// when with_oracle is set.  Commuting inputs route to the closed form.
AnomalyReport zeta_anomaly_local(const Operator& a, const Operator& b,
                                 bool with_oracle = true,
                                 const AnomalyOptions& opt = {});

}  // namespace psido
