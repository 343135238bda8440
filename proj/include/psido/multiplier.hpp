#pragma once

// Concrete operators on L^2(S^1, C^m): Fourier multipliers defined by a
// closed-form mode map n -> sigma(n) (with exact spectra), and x-dependent
// operators defined by symbol expressions in (x, xi).  Multipliers carry the
// large-|n| expansions used by the spectral mode sums, plus admissibility
// checks and automatic spectral-cut selection.

#include <string>

#include "psido/expression.hpp"
#include "psido/symbol.hpp"

namespace psido {

struct AdmissibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Operator {
    std::string name;
    cd order{0};
    int dim = 1;
    double cut = PI;
    Symbol symbol;                        // carries the exact evaluator
    std::function<Mat(double)> mode_map;  // empty for x-dependent operators
    MatSeries tail_plus, tail_minus;      // expansions as n -> +/-infinity

    bool is_multiplier() const { return static_cast<bool>(mode_map); }
    Mat mode(double n) const { return mode_map(n); }
};

// Matrix of expressions in n only (Fourier multiplier).
Operator make_matrix_multiplier(const std::string& name,
                                const std::vector<std::vector<std::string>>& entries,
                                double cut = PI, int depth = kDefaultDepth);

// base(n)^p for a scalar base expression in n.
Operator make_power_multiplier(const std::string& name, const std::string& base,
                               cd exponent, double cut = PI,
                               int depth = kDefaultDepth);

// xi + c with spectral cut avoiding the real axis (default pi/2).
Operator make_shifted_first_order(const std::string& name, cd c,
                                  double cut = PI / 2, int depth = kDefaultDepth);

// Matrix of expressions in x and xi (no exact spectrum; symbol only).
Operator make_variable_symbol(const std::string& name,
                              const std::vector<std::vector<std::string>>& entries,
                              double cut = PI, int grid = kDefaultGrid,
                              int depth = kDefaultDepth);

// Mode-wise (and symbol-level) product; both factors must be multipliers.
Operator operator_product(const Operator& a, const Operator& b, double cut);
// Same, with the cut auto-selected from the product's spectrum sample.
Operator operator_product_auto(const Operator& a, const Operator& b);
Operator operator_power(const Operator& a, int k, double cut);

// A (I + t S) for a lower-order perturbation S; constant-order family in t.
Operator perturb_family(const Operator& a, const Operator& s, double t);

// Distance (degrees) from the cut ray to the nearest eigenvalue direction,
// scanning modes |n| <= modes plus the asymptotic leading rays.  Throws
// AdmissibilityError when an eigenvalue vanishes or the gap is below 2 deg.
double check_admissible(const Operator& a, double theta, int modes = 512);

// Bisector of the largest eigenvalue-free angular gap (the auto cut).
double auto_cut(const Operator& a, int modes = 512);

// Bisector of the largest gap in a set of eigenvalue arguments; throws
// AdmissibilityError (tagged with name) when the gap is below 4 degrees.
double cut_from_args(std::vector<double> args, const std::string& name);

}  // namespace psido
