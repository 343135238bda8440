#pragma once

// Holomorphic calculus at the symbol level: parameter-dependent resolvent
// expansion, complex powers A_theta^z, logarithms, and sectorial projectors.
// All contour integration; eigendecompositions appear only in test oracles.

#include "psido/contour.hpp"
#include "psido/symbol.hpp"

namespace psido {

struct HoloOptions {
    int depth = -1;        // component count (defaults to the input depth)
    double tol = 1e-11;    // node-doubling stop for the contour quadrature
};

// Components b_j(x, +-1; lambda) of the resolvent parametrix of a classical
// symbol, at one value of the spectral parameter.
std::vector<Component> resolvent_symbols(const Symbol& a, cd lambda, int depth = -1);

// sigma(A_theta^z), degrees a*z - j.  The closed contour is analytic in z
// and realizes the canonical extension to Re z >= 0 (consistency with
// A # A^z is covered by tests); z = 0 returns the identity exactly.
Symbol complex_power_symbol(const Symbol& a, cd z, double theta,
                            const HoloOptions& opt = {});

// sigma(log_theta A) = a log|xi| I + classical part (log type 1); computed as
// the z-derivative of the power family under the contour integral.
Symbol log_symbol(const Symbol& a, double theta, const HoloOptions& opt = {});

// Symbol of the sectorial projector associated with the cone
// theta <= arg <= phi; smoothing (all components ~ 0) when no leading
// eigenvalue lies in the cone.
Symbol sectorial_projector_symbol(const Symbol& a, double theta, double phi,
                                  const HoloOptions& opt = {});

}  // namespace psido
