#include "psido/periodic_function.hpp"

#include <stdexcept>

namespace psido {

PeriodicMatrixFunction::PeriodicMatrixFunction(const Mat& constant) : samples_{constant} {}

PeriodicMatrixFunction::PeriodicMatrixFunction(int grid, int dim) {
    samples_.assign(grid, Mat::Zero(dim, dim));
}

PeriodicMatrixFunction PeriodicMatrixFunction::zero(int grid, int dim) {
    return PeriodicMatrixFunction(grid, dim);
}

PeriodicMatrixFunction PeriodicMatrixFunction::identity(int grid, int dim) {
    PeriodicMatrixFunction f(grid, dim);
    for (auto& m : f.samples_) m = Mat::Identity(dim, dim);
    return f;
}

Mat PeriodicMatrixFunction::eval(double x) const {
    int g = grid();
    if (g == 1) return samples_[0];
    int m = dim();
    // Fourier coefficients c_k = (1/g) sum_j f_j e^{-ik x_j}, k = -g/2..g/2-1;
    // evaluate sum_k c_k e^{ikx} with the Nyquist mode split symmetrically.
    Mat out = Mat::Zero(m, m);
    for (int k = -g / 2; k < g / 2; ++k) {
        Mat ck = Mat::Zero(m, m);
        for (int j = 0; j < g; ++j)
            ck += samples_[j] * std::exp(cd(0, -k * x_of(j)));
        ck /= double(g);
        double w = (k == -g / 2) ? 0.5 : 1.0;  // cosine-only Nyquist
        if (k == -g / 2)
            out += ck * std::cos(double(k) * x);
        else
            out += ck * std::exp(cd(0, k * x)) * w;
    }
    return out;
}

PeriodicMatrixFunction PeriodicMatrixFunction::derivative() const {
    int g = grid();
    int m = dim();
    if (g == 1) return zero(1, m);
    PeriodicMatrixFunction out(g, m);
    // Direct DFT differentiation; grids are small (<=256).
    std::vector<Mat> coef(g, Mat::Zero(m, m));
    for (int k = -g / 2; k < g / 2; ++k) {
        Mat ck = Mat::Zero(m, m);
        for (int j = 0; j < g; ++j)
            ck += samples_[j] * std::exp(cd(0, -k * x_of(j)));
        ck *= cd(0, double(k)) / double(g);
        if (k == -g / 2) continue;  // Nyquist derivative dropped
        coef[(k + g) % g] = ck;
    }
    for (int j = 0; j < g; ++j) {
        Mat acc = Mat::Zero(m, m);
        for (int k = -g / 2 + 1; k < g / 2; ++k)
            acc += coef[(k + g) % g] * std::exp(cd(0, k * x_of(j)));
        out.samples_[j] = acc;
    }
    return out;
}

Mat PeriodicMatrixFunction::mean() const {
    Mat acc = Mat::Zero(dim(), dim());
    for (const auto& s : samples_) acc += s;
    return acc / double(grid());
}

double PeriodicMatrixFunction::max_abs() const {
    double m = 0;
    for (const auto& s : samples_) m = std::max(m, s.cwiseAbs().maxCoeff());
    return m;
}

PeriodicMatrixFunction& PeriodicMatrixFunction::operator+=(const PeriodicMatrixFunction& o) {
    if (o.grid() == grid()) {
        for (int j = 0; j < grid(); ++j) samples_[j] += o.samples_[j];
    } else if (o.grid() == 1) {
        for (auto& s : samples_) s += o.samples_[0];
    } else if (grid() == 1) {
        Mat c = samples_[0];
        samples_.assign(o.grid(), c);
        for (int j = 0; j < grid(); ++j) samples_[j] += o.samples_[j];
    } else {
        throw std::invalid_argument("PeriodicMatrixFunction: grid mismatch");
    }
    return *this;
}

PeriodicMatrixFunction& PeriodicMatrixFunction::operator-=(const PeriodicMatrixFunction& o) {
    PeriodicMatrixFunction neg = o;
    neg *= cd(-1.0);
    return (*this += neg);
}

PeriodicMatrixFunction& PeriodicMatrixFunction::operator*=(cd s) {
    for (auto& m : samples_) m *= s;
    return *this;
}

PeriodicMatrixFunction PeriodicMatrixFunction::matmul(const PeriodicMatrixFunction& a,
                                                      const PeriodicMatrixFunction& b) {
    int g = std::max(a.grid(), b.grid());
    if (a.grid() != b.grid() && a.grid() != 1 && b.grid() != 1)
        throw std::invalid_argument("PeriodicMatrixFunction::matmul: grid mismatch");
    PeriodicMatrixFunction out(g, a.dim());
    for (int j = 0; j < g; ++j)
        out.samples_[j] = a.samples_[a.grid() == 1 ? 0 : j] * b.samples_[b.grid() == 1 ? 0 : j];
    return out;
}

PeriodicMatrixFunction PeriodicMatrixFunction::inverse() const {
    PeriodicMatrixFunction out(grid(), dim());
    for (int j = 0; j < grid(); ++j) out.samples_[j] = samples_[j].inverse();
    return out;
}

}  // namespace psido
