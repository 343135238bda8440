#pragma once

// Truncated one-sided asymptotic expansions in |xi| as |xi| -> infinity:
//   f ~ sum_{j<len} c[j] |xi|^{degree-j}
// used to expand closed-form mode maps into homogeneous components.
// Scalar series back the expression evaluator; matrix series back the
// large-mode tails of the spectral sums.

#include <stdexcept>
#include <vector>

#include "psido/numerics.hpp"

namespace psido {

constexpr int kSeriesLen = 12;
constexpr double kDegreeMergeTol = 1e-9;

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ScalarSeries {
public:
    ScalarSeries() : degree_(0), c_(kSeriesLen, cd(0)) {}  // zero series
    static ScalarSeries constant(cd v, int len = kSeriesLen);
    // The coordinate n restricted to one side: n = sign * |xi|.
    static ScalarSeries coordinate(int sign, int len = kSeriesLen);

    cd degree() const { return degree_; }
    const std::vector<cd>& coeffs() const { return c_; }
    int len() const { return static_cast<int>(c_.size()); }
    bool is_zero() const;

    ScalarSeries operator-() const;
    friend ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b);
    friend ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b);
    friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);
    friend ScalarSeries operator/(const ScalarSeries& a, const ScalarSeries& b);

    ScalarSeries inverse() const;
    // f^p with the principal branch on the leading coefficient.
    ScalarSeries pow(cd p) const;
    // Only for series of degree <= 0 (bounded as |xi| -> infinity).
    ScalarSeries exp_() const;
    ScalarSeries sin_() const;
    ScalarSeries cos_() const;
    // log of a degree-0 series (no log|xi| term appears).
    ScalarSeries log_() const;

    // Coefficient of |xi|^{degree-j}; j past the stored window is zero.
    cd coeff(int j) const { return (j >= 0 && j < len()) ? c_[j] : cd(0); }
    // Numeric evaluation of the truncation at |xi| = r.
    cd eval(double r) const;

    void normalize(double tol = 1e-13);

    ScalarSeries(cd degree, std::vector<cd> c) : degree_(degree), c_(std::move(c)) {}

private:
    cd degree_;
    std::vector<cd> c_;
};

// Matrix-coefficient series; leading coefficient must be a scalar multiple of
// the identity for pow/log (true of every operator family shipped here).
struct MatSeriesLog;

class MatSeries {
public:
    MatSeries() : degree_(0) {}
    MatSeries(cd degree, std::vector<Mat> c) : degree_(degree), c_(std::move(c)) {}
    static MatSeries from_scalar_entries(const std::vector<std::vector<ScalarSeries>>& entries,
                                         int len = kSeriesLen);

    cd degree() const { return degree_; }
    int len() const { return static_cast<int>(c_.size()); }
    int dim() const { return c_.empty() ? 0 : static_cast<int>(c_[0].rows()); }
    Mat coeff(int j) const;
    bool is_zero() const;

    friend MatSeries operator+(const MatSeries& a, const MatSeries& b);
    friend MatSeries operator*(const MatSeries& a, const MatSeries& b);
    static MatSeries identity(int dim, int len = kSeriesLen);
    MatSeries scaled(cd s) const;

    // f^z with branch cut along the ray at angle theta applied to the scalar
    // leading coefficient.
    MatSeries pow(cd z, double theta) const;
    // log_theta f = a log|xi| * I + (constant-order series); returns the pair.
    using LogResult = MatSeriesLog;
    LogResult log(double theta) const;

    void normalize(double tol = 1e-13);

private:
    cd degree_;
    std::vector<Mat> c_;
};

struct MatSeriesLog {
    cd a;  // coefficient of log|xi| (equals degree of f)
    MatSeries series;
};

// Branch helpers for the cut along the ray of angle theta:
// arg in [theta - 2*pi, theta).
double arg_cut(cd z, double theta);
cd log_cut(cd z, double theta);
cd pow_cut(cd base, cd expo, double theta);

}  // namespace psido
