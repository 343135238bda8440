#pragma once

// Closed Cauchy contours around an annular sector avoiding the branch ray
// arg(lambda) = theta, plus matrix functions computed from them.  The contour
// runs counterclockwise: outer arc, ray inward on the theta side, inner
// circle, ray outward on the theta - 2*pi side.  Eigendecomposition-based
// evaluations are provided separately as cross-check oracles.

#include "psido/series.hpp"

namespace psido {

struct SpectralCut {
    double theta = PI;
};

struct ContourNode {
    cd lam;    // lambda
    double t;  // arg(lambda) within [theta - 2*pi, theta]
    cd w;      // quadrature weight including d(lambda) and 1/(2*pi*i)
};

struct Contour {
    std::vector<ContourNode> nodes;
    double r = 0, R = 0, theta = 0;
};

// `scale` multiplies the panel counts (node-doubling convergence control).
Contour build_sector_contour(double r, double R, double theta, int scale = 1,
                             int nodes_per_panel = 12);

// Counterclockwise boundary of the truncated cone
// {r <= |lambda| <= R, theta <= arg lambda <= phi}.
Contour build_cone_boundary(double r, double R, double theta, double phi,
                            int scale = 1, int nodes_per_panel = 12);

struct RadialBounds {
    double rmin = 0;  // below every eigenvalue modulus
    double rmax = 0;  // above every eigenvalue modulus
};
// Cheap spectral-radius bracketing: 1/||M^-1|| <= |eig| <= ||M||.
RadialBounds radial_bounds(const Mat& M);
RadialBounds merge(const RadialBounds& a, const RadialBounds& b);

// f(M) = (1/2*pi*i) oint f(lambda) (lambda - M)^{-1} d lambda over the sector
// contour, with node doubling until `tol`.  `f` receives (|lambda|, arg).
Mat matrix_fun_contour(const Mat& M, const std::function<cd(double, double)>& f,
                       double theta, double tol = 1e-12);

Mat matrix_power_contour(const Mat& M, cd z, double theta, double tol = 1e-12);
Mat matrix_log_contour(const Mat& M, double theta, double tol = 1e-12);

// Eigendecomposition route with a Schur/Parlett fallback; used as an
// independent oracle and by the spectral mode sums.
Mat matrix_fun_eig(const Mat& M, const std::function<cd(cd)>& f);
Mat matrix_power_eig(const Mat& M, cd z, double theta);
Mat matrix_log_eig(const Mat& M, double theta);

}  // namespace psido
