#include "psido/contour.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace psido {

namespace {

void add_arc(Contour& c, double radius, double t0, double t1, int panels, int nodes) {
    const QuadRule& q = gauss_legendre(nodes);
    double h = (t1 - t0) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = t0 + p * h, b = a + h;
        double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (int i = 0; i < nodes; ++i) {
            double t = mid + hw * q.x[i];
            cd lam = radius * std::exp(cd(0, t));
            cd dlam = cd(0, 1) * lam;  // d lambda / dt
            ContourNode n;
            n.lam = lam;
            n.t = t;
            n.w = dlam * (hw * q.w[i]) / cd(0, 2.0 * PI);
            c.nodes.push_back(n);
        }
    }
}

void add_ray(Contour& c, double rho0, double rho1, double angle, int panels, int nodes) {
    // Geometric panels between rho0 and rho1 (either direction).
    const QuadRule& q = gauss_legendre(nodes);
    double lo = std::min(rho0, rho1), hi = std::max(rho0, rho1);
    double sign = rho1 > rho0 ? 1.0 : -1.0;
    double ratio = std::pow(hi / lo, 1.0 / panels);
    cd eia = std::exp(cd(0, angle));
    for (int p = 0; p < panels; ++p) {
        double a = lo * std::pow(ratio, p), b = lo * std::pow(ratio, p + 1);
        double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (int i = 0; i < nodes; ++i) {
            double rho = mid + hw * q.x[i];
            ContourNode n;
            n.lam = rho * eia;
            n.t = angle;
            n.w = sign * eia * (hw * q.w[i]) / cd(0, 2.0 * PI);
            c.nodes.push_back(n);
        }
    }
}

}  // namespace

Contour build_sector_contour(double r, double R, double theta, int scale, int nodes_per_panel) {
    Contour c;
    c.r = r;
    c.R = R;
    c.theta = theta;
    int arc_panels = 8 * scale;
    int ray_panels = std::max(4, static_cast<int>(std::ceil(std::log2(R / r)))) * scale;
    add_arc(c, R, theta - 2.0 * PI, theta, arc_panels, nodes_per_panel);
    add_ray(c, R, r, theta, ray_panels, nodes_per_panel);
    add_arc(c, r, theta, theta - 2.0 * PI, arc_panels, nodes_per_panel);
    add_ray(c, r, R, theta - 2.0 * PI, ray_panels, nodes_per_panel);
    return c;
}

Contour build_cone_boundary(double r, double R, double theta, double phi,
                            int scale, int nodes_per_panel) {
    Contour c;
    c.r = r;
    c.R = R;
    c.theta = theta;
    int arc_panels = 4 * scale;
    int ray_panels = std::max(4, static_cast<int>(std::ceil(std::log2(R / r)))) * scale;
    add_ray(c, r, R, theta, ray_panels, nodes_per_panel);
    add_arc(c, R, theta, phi, arc_panels, nodes_per_panel);
    add_ray(c, R, r, phi, ray_panels, nodes_per_panel);
    add_arc(c, r, phi, theta, arc_panels, nodes_per_panel);
    return c;
}

RadialBounds radial_bounds(const Mat& M) {
    RadialBounds b;
    b.rmax = M.norm();  // Frobenius bounds the spectral radius
    Mat inv = M.inverse();
    double ninv = inv.norm();
    b.rmin = ninv > 0 ? 1.0 / ninv : 0.0;
    return b;
}

RadialBounds merge(const RadialBounds& a, const RadialBounds& b) {
    RadialBounds r;
    r.rmin = std::min(a.rmin, b.rmin);
    r.rmax = std::max(a.rmax, b.rmax);
    return r;
}

Mat matrix_fun_contour(const Mat& M, const std::function<cd(double, double)>& f,
                       double theta, double tol) {
    RadialBounds b = radial_bounds(M);
    double r = b.rmin / 3.0, R = 3.0 * b.rmax;
    int m = static_cast<int>(M.rows());
    Mat prev = Mat::Zero(m, m);
    bool have_prev = false;
    for (int scale = 1; scale <= 32; scale *= 2) {
        Contour c = build_sector_contour(r, R, theta, scale);
        Mat acc = Mat::Zero(m, m);
        Mat I = Mat::Identity(m, m);
        for (const auto& n : c.nodes)
            acc += (n.w * f(std::abs(n.lam), n.t)) * (n.lam * I - M).inverse();
        if (have_prev && (acc - prev).cwiseAbs().maxCoeff() <= tol * (1.0 + acc.cwiseAbs().maxCoeff()))
            return acc;
        prev = acc;
        have_prev = true;
    }
    return prev;
}

Mat matrix_power_contour(const Mat& M, cd z, double theta, double tol) {
    return matrix_fun_contour(
        M, [z](double rho, double t) { return std::exp(z * cd(std::log(rho), t)); }, theta, tol);
}

Mat matrix_log_contour(const Mat& M, double theta, double tol) {
    return matrix_fun_contour(
        M, [](double rho, double t) { return cd(std::log(rho), t); }, theta, tol);
}

Mat matrix_fun_eig(const Mat& M, const std::function<cd(cd)>& f) {
    int m = static_cast<int>(M.rows());
    Eigen::ComplexEigenSolver<Mat> es(M);
    if (es.info() == Eigen::Success) {
        const Mat& V = es.eigenvectors();
        double cond = V.jacobiSvd().singularValues()(0) /
                      V.jacobiSvd().singularValues()(m - 1);
        if (cond < 1e8) {
            Mat D = Mat::Zero(m, m);
            for (int i = 0; i < m; ++i) D(i, i) = f(es.eigenvalues()(i));
            return V * D * V.inverse();
        }
    }
    // Schur/Parlett fallback (simple eigenvalues on the diagonal required).
    Eigen::ComplexSchur<Mat> schur(M);
    const Mat& T = schur.matrixT();
    const Mat& U = schur.matrixU();
    Mat F = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i) F(i, i) = f(T(i, i));
    for (int d = 1; d < m; ++d) {
        for (int i = 0; i + d < m; ++i) {
            int j = i + d;
            cd den = T(i, i) - T(j, j);
            if (std::abs(den) < 1e-10)
                throw std::runtime_error("matrix_fun_eig: clustered eigenvalues in Parlett recurrence");
            cd num = T(i, j) * (F(i, i) - F(j, j));
            for (int k = i + 1; k < j; ++k) num += F(i, k) * T(k, j) - T(i, k) * F(k, j);
            F(i, j) = num / den;
        }
    }
    return U * F * U.adjoint();
}

Mat matrix_power_eig(const Mat& M, cd z, double theta) {
    return matrix_fun_eig(M, [z, theta](cd lam) { return pow_cut(lam, z, theta); });
}

Mat matrix_log_eig(const Mat& M, double theta) {
    return matrix_fun_eig(M, [theta](cd lam) { return log_cut(lam, theta); });
}

}  // namespace psido
