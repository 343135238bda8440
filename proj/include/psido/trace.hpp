#pragma once

// Regularized functionals on symbols: the residue (with its local density),
// finite-part cut-off traces, canonical traces, and weighted traces via the
// defect formula and via a direct Laurent fit in the complex weight power.
//
// Two interchangeable finite-part conventions are provided:
//   CutoffIntegral — fp of int_{-R}^{R} tr sigma(x,xi) dxi / 2pi, integrated
//     over x (the symbol-side definition; works for any exact evaluator);
//   ModeSum — fp of sum_{|n|<=M} tr sigma(n) with Hurwitz-zeta continuation
//     of the large-|n| expansion (operator-true for Fourier multipliers;
//     matches spectral mode sums to the symbol-tail truncation error).
// Purely residue-based quantities are identical in both conventions.

#include "psido/holo_calc.hpp"
#include "psido/multiplier.hpp"

namespace psido {

enum class TraceFlavor { CutoffIntegral, ModeSum };

struct TraceOptions {
    TraceFlavor flavor = TraceFlavor::CutoffIntegral;
    double Lambda = 1e3;   // split radius of the cut-off integral
    int modes = 4096;      // mode cap M of the mode-sum route
    double direct_h = 0.01;  // z-sample spacing (scaled by 1/q) of the fit
    std::function<double(double)> chi;  // excision for expansion-only symbols
};

struct DensityReport {
    std::vector<double> x_grid;
    std::vector<cd> values;
    cd integral{0};  // 2*pi * mean of values
    double error_estimate = 0;
};

struct TraceResult {
    cd value{0};
    double error_estimate = 0;
    // A degree -1, log-free term forced a finite part that is not a trace.
    bool obstruction = false;
    DensityReport density;
};

// Noncommutative residue: degree -1, log-power-0 fiber trace over the two
// cosphere points, 1/(2*pi) each, integrated over x.
DensityReport residue_density(const Symbol& s);
cd residue(const Symbol& s);

// Finite-part trace in the requested flavor, integrated over x.
TraceResult canonical_trace(const Symbol& s, const TraceOptions& opt = {});

// Defect formula: tr^Q(A) = fp-trace(A) - res(A # log Q) / q.
cd weighted_trace(const Symbol& a, const Operator& Q, const TraceOptions& opt = {});

// Direct route: Laurent fit of z -> fp-trace(A # Q^{-z}) around z = 0,
// constant coefficient returned.  `max_pole` is 1 for classical A and 2 for
// log-polyhomogeneous A (double poles occur for tr^Q(log A)).
struct DirectFit {
    cd value{0};        // c_0
    std::vector<cd> coeffs;  // c_{-max_pole} .. c_4
    double residual = 0;
    int max_pole = 1;
};
DirectFit weighted_trace_direct(const Symbol& a, const Operator& Q,
                                const TraceOptions& opt = {}, int max_pole = 1);

// Coboundary identity: (1/q) res(A # [B, log Q]) together with its two
// cross-checks (role swap and the weighted trace of the commutator).
struct CommutatorCheck {
    cd value{0};     // (1/q) res(A # [B, log Q])
    cd swapped{0};   // -(1/q) res(B # [A, log Q])
    cd as_trace{0};  // tr^Q([A, B])
};
CommutatorCheck weighted_trace_commutator(const Symbol& a, const Symbol& b,
                                          const Operator& Q,
                                          const TraceOptions& opt = {});

// fp of sum_{n>M} n^d log^l n (Hurwitz continuation; finite part at d = -1).
cd mode_tail_fp(cd d, int l, int M, bool* obstruction = nullptr);

}  // namespace psido
