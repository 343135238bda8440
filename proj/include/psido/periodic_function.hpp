#pragma once

// Matrix-valued smooth 2*pi-periodic functions sampled on a uniform grid,
// with spectrally accurate differentiation and trigonometric interpolation.

#include <vector>

#include "psido/numerics.hpp"

namespace psido {

class PeriodicMatrixFunction {
public:
    PeriodicMatrixFunction() = default;
    // Constant function (broadcast to grid size 1).
    explicit PeriodicMatrixFunction(const Mat& constant);
    PeriodicMatrixFunction(int grid, int dim);

    static PeriodicMatrixFunction zero(int grid, int dim);
    static PeriodicMatrixFunction identity(int grid, int dim);

    int grid() const { return static_cast<int>(samples_.size()); }
    int dim() const { return samples_.empty() ? 0 : static_cast<int>(samples_[0].rows()); }
    bool constant() const { return grid() == 1; }

    const Mat& at(int j) const { return samples_[j]; }
    Mat& at(int j) { return samples_[j]; }
    double x_of(int j) const { return 2.0 * PI * j / grid(); }

    // Trigonometric interpolation at arbitrary x.
    Mat eval(double x) const;

    // d/dx via the discrete Fourier transform (Nyquist mode dropped).
    PeriodicMatrixFunction derivative() const;

    Mat mean() const;
    double max_abs() const;

    PeriodicMatrixFunction& operator+=(const PeriodicMatrixFunction& o);
    PeriodicMatrixFunction& operator-=(const PeriodicMatrixFunction& o);
    PeriodicMatrixFunction& operator*=(cd s);
    friend PeriodicMatrixFunction operator+(PeriodicMatrixFunction a, const PeriodicMatrixFunction& b) { return a += b; }
    friend PeriodicMatrixFunction operator-(PeriodicMatrixFunction a, const PeriodicMatrixFunction& b) { return a -= b; }
    friend PeriodicMatrixFunction operator*(cd s, PeriodicMatrixFunction a) { return a *= s; }

    // Pointwise matrix product; grids of size 1 broadcast.
    static PeriodicMatrixFunction matmul(const PeriodicMatrixFunction& a,
                                         const PeriodicMatrixFunction& b);
    // Pointwise inverse.
    PeriodicMatrixFunction inverse() const;

private:
    std::vector<Mat> samples_;
};

using PMF = PeriodicMatrixFunction;

}  // namespace psido
