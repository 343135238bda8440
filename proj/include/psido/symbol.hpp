#pragma once

// Truncated (log-)polyhomogeneous symbols on the circle.  A component of
// degree d and log power l is the function  c(x, sgn xi) |xi|^d log^l|xi|,
// determined by its matrix values at xi = +1 and xi = -1 on a periodic x
// grid.  Degrees run down the ladder order - j, j = 0..depth-1.

#include <functional>
#include <optional>

#include "psido/periodic_function.hpp"

namespace psido {

constexpr int kDefaultDepth = 8;
constexpr int kDefaultGrid = 64;

struct SymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Component {
    PMF plus;   // values at xi = +1
    PMF minus;  // values at xi = -1
    Component() = default;
    Component(PMF p, PMF m) : plus(std::move(p)), minus(std::move(m)) {}
    static Component zero(int grid, int dim) {
        return Component(PMF::zero(grid, dim), PMF::zero(grid, dim));
    }
    bool empty() const { return plus.grid() == 0; }
    double max_abs() const {
        return empty() ? 0.0 : std::max(plus.max_abs(), minus.max_abs());
    }
};

class Symbol {
public:
    Symbol() = default;
    Symbol(cd order, int log_type, int depth, int grid, int dim);

    static Symbol identity(int grid, int dim, int depth = kDefaultDepth);
    static Symbol constant(const Mat& value, int depth = kDefaultDepth);

    cd order() const { return order_; }
    int log_type() const { return log_type_; }
    int depth() const { return depth_; }
    int grid() const { return grid_; }
    int dim() const { return dim_; }
    cd degree_of(int j) const { return order_ - cd(double(j)); }

    const Component& comp(int j, int l = 0) const { return comps_[j][l]; }
    Component& comp(int j, int l = 0) { return comps_[j][l]; }

    // Index on the degree ladder hitting `target`, if any (tolerance 1e-9).
    std::optional<int> index_of_degree(cd target) const;

    Symbol& operator*=(cd s);
    friend Symbol operator*(cd s, Symbol a) { return a *= s; }
    friend Symbol operator+(const Symbol& a, const Symbol& b);
    friend Symbol operator-(const Symbol& a, const Symbol& b);

    // Drop log rows above new_log_type; rows must be numerically negligible
    // relative to `tol` times the symbol scale.
    Symbol truncated_log_type(int new_log_type, double tol = 1e-7) const;

    double max_abs() const;

    // Exact full symbol (x, xi) -> matrix, when available.
    void set_exact(std::function<Mat(double, double)> f, bool multiplier);
    bool has_exact() const { return static_cast<bool>(exact_); }
    bool is_multiplier() const { return multiplier_; }
    Mat exact(double x, double xi) const;

    // Numeric value of the truncated expansion at (x, xi), each component
    // weighted by the excision function chi.
    Mat homog_eval(double x, double xi, const std::function<double(double)>& chi) const;

private:
    cd order_{0};
    int log_type_ = 0;
    int depth_ = 0;
    int grid_ = 0;
    int dim_ = 0;
    std::vector<std::vector<Component>> comps_;  // [j][l]
    std::function<Mat(double, double)> exact_;
    bool multiplier_ = false;
};

// Smooth excision: 0 for |xi| <= 1/2, 1 for |xi| >= 1 (exp-based bump).
double chi_default(double xi);
// Alternative profile, same support, for stability checks.
double chi_alt(double xi);

// Star (composition) product  a # b ~ sum_k (-i)^k/k! d_xi^k a d_x^k b,
// truncated to `depth` components (defaults to min of the operand depths).
Symbol star_product(const Symbol& a, const Symbol& b, int depth = -1);

// Parametrix expansion of the inverse of a classical symbol with invertible
// leading component.
Symbol inverse_symbol(const Symbol& a, int depth = -1);

// a # b - b # a.
Symbol commutator_symbol(const Symbol& a, const Symbol& b, int depth = -1);

// Star powers with non-negative integer exponent.
Symbol star_power(const Symbol& a, int k, int depth = -1);

// Internal: tables of xi- and x-derivatives used by the product/parametrix
// recursions (exposed for the resolvent expansion).
using CompTable = std::vector<std::vector<Component>>;
CompTable table_deriv_xi(const CompTable& t, cd top_order);
CompTable table_deriv_x(const CompTable& t);

}  // namespace psido
