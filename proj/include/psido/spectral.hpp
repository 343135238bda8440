#pragma once

// Exact spectral ground truth for Fourier multipliers: zeta functions by
// subtracted-tail analytic continuation (per-mode eigendecomposition plus
// Hurwitz-zeta summation of the large-|n| expansion), values and pole
// residues by Laurent fits, zeta-determinants, and the direct multiplicative
// anomaly.  Everything here is independent of the contour-based calculus.

#include "psido/multiplier.hpp"

namespace psido {

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectralOptions {
    int modes = 4096;  // direct-sum cap M
    int terms = 12;    // expansion terms J used for the tail
};

struct ZetaResult {
    cd value{0};
    cd direct_part{0};
    cd tail_part{0};
    double error_estimate = 0;
};

// zeta_A(s) = sum_n tr sigma(n)_theta^{-s}, s off the pole ladder
// {(1+j)/a}; throws SpectralError when a tail term blows up at a pole.
ZetaResult zeta(const Operator& a, cd s, const SpectralOptions& opt = {});

// Regular value at s = 0 (Laurent fit through nearby samples).
cd zeta_at_zero(const Operator& a, const SpectralOptions& opt = {});

// Residue of zeta_A at the simple pole s0.
cd zeta_pole_residue(const Operator& a, cd s0, const SpectralOptions& opt = {});

// zeta_A'(0) by centered differences with Richardson extrapolation.
cd zeta_prime_zero(const Operator& a, const SpectralOptions& opt = {});

// det_zeta(A) = exp(-zeta_A'(0)).
cd det_zeta_spectral(const Operator& a, const SpectralOptions& opt = {});

// log M_zeta(A,B) = log det(AB) - log det A - log det B, assembled from the
// three zeta-prime values (AB cut chosen automatically unless given).
cd anomaly_spectral(const Operator& a, const Operator& b,
                    std::optional<double> cut_ab = std::nullopt,
                    const SpectralOptions& opt = {});

// fp_{z=0} of sum_n tr(sigma_A(n) sigma_Q(n)^{-z}) via a Laurent fit.
cd weighted_trace_spectral(const Operator& a, const Operator& q,
                           const SpectralOptions& opt = {});

}  // namespace psido
