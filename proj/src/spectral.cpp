#include "psido/spectral.hpp"

#include <cmath>

#include "psido/contour.hpp"

namespace psido {

namespace {

void require_multiplier(const Operator& a) {
    if (!a.is_multiplier())
        throw SpectralError(a.name + ": spectral oracle needs a Fourier multiplier");
}

// sum_{n>M} tr S(n) for the power family S = tail^{-s}, by Hurwitz zeta.
// Extended precision: at negative s the continued tails reach ~M^{|s|a+1}
// and cancel against the direct sum down to O(1).
cld tail_sum(const MatSeries& tail, cd s, double theta, int M, int J, double* err) {
    MatSeries p = tail.pow(-s, theta);
    double q = double(M) + 1.0;
    std::vector<cld> parts;
    int jmax = std::min(J, p.len());
    for (int j = 0; j < jmax; ++j) {
        cd c = p.coeff(j).trace();
        if (std::abs(c) < 1e-300) continue;
        cd sh = -(p.degree() - cd(double(j)));  // = s*order + j
        // Large tail values at negative s are fine (they cancel against the
        // direct sum); only an actual Hurwitz pole is fatal.
        if (std::abs(sh - 1.0) < 1e-6)
            throw SpectralError("zeta tail term sits on the Hurwitz pole");
        parts.push_back(cld(c) * hurwitz_zeta_wide(cld(sh.real(), sh.imag()), (long double)q));
    }
    if (err) {
        cd c = p.coeff(jmax - 1).trace();
        double d = std::real(p.degree()) - (jmax - 1);
        *err += std::abs(c) * std::pow(q, d + 1.0) / std::max(1.0, std::abs(d + 1.0));
    }
    return pairwise_sum_wide(parts);
}

}  // namespace

ZetaResult zeta(const Operator& a, cd s, const SpectralOptions& opt) {
    require_multiplier(a);
    ZetaResult r;
    std::vector<cld> parts;
    for (int n = -opt.modes; n <= opt.modes; ++n) {
        if (a.dim == 1) {
            // Scalar modes in extended precision: at negative Re s the direct
            // part grows like M^{-a Re s + 1} and cancels against the tails.
            cd m = a.mode(double(n))(0, 0);
            cld lg(std::log((long double)std::abs(m)), arg_cut(m, a.cut));
            parts.push_back(std::exp(cld(-s.real(), -s.imag()) * lg));
        } else {
            parts.push_back(cld(matrix_power_eig(a.mode(double(n)), -s, a.cut).trace()));
        }
    }
    cld direct = pairwise_sum_wide(parts);
    cld tails = tail_sum(a.tail_plus, s, a.cut, opt.modes, opt.terms, &r.error_estimate) +
                tail_sum(a.tail_minus, s, a.cut, opt.modes, opt.terms, &r.error_estimate);
    cld value = direct + tails;
    r.direct_part = cd(double(direct.real()), double(direct.imag()));
    r.tail_part = cd(double(tails.real()), double(tails.imag()));
    r.value = cd(double(value.real()), double(value.imag()));
    return r;
}

cd zeta_at_zero(const Operator& a, const SpectralOptions& opt) {
    double h = 1e-2;
    std::vector<cd> zs, fs;
    for (int k : {-2, -1, 1, 2}) {
        cd z = cd(k * h);
        zs.push_back(z);
        fs.push_back(zeta(a, z, opt).value);
    }
    // zeta is regular at 0 (the residue there is res(I) = 0); the pole term
    // of the fit absorbs numerical leakage only.
    return laurent_fit(zs, fs, -1, 2)[1];
}

cd zeta_pole_residue(const Operator& a, cd s0, const SpectralOptions& opt) {
    double h = 1e-2;
    std::vector<cd> zs, fs;
    for (int k : {-2, -1, 1, 2}) {
        cd z = cd(k * h);
        zs.push_back(z);
        fs.push_back(zeta(a, s0 + z, opt).value);
    }
    return laurent_fit(zs, fs, -1, 2)[0];
}

cd zeta_prime_zero(const Operator& a, const SpectralOptions& opt) {
    return richardson_diff([&](double t) { return zeta(a, cd(t), opt).value; }, 1e-4);
}

cd det_zeta_spectral(const Operator& a, const SpectralOptions& opt) {
    return std::exp(-zeta_prime_zero(a, opt));
}

cd anomaly_spectral(const Operator& a, const Operator& b,
                    std::optional<double> cut_ab, const SpectralOptions& opt) {
    require_multiplier(a);
    require_multiplier(b);
    Operator ab = cut_ab ? operator_product(a, b, *cut_ab) : operator_product_auto(a, b);
    return -zeta_prime_zero(ab, opt) + zeta_prime_zero(a, opt) + zeta_prime_zero(b, opt);
}

cd weighted_trace_spectral(const Operator& a, const Operator& q,
                           const SpectralOptions& opt) {
    require_multiplier(a);
    require_multiplier(q);
    double h = 1e-2 / std::abs(q.order);
    // The finite part is independent of the mode cap, and the continuation
    // coefficients carry ~1e-16 relative noise that the Hurwitz tails amplify
    // by ~M^{a+1}; a moderate cap keeps the samples clean.
    const int modes = std::min(opt.modes, 512);
    std::vector<cd> zs, fs;
    for (int k : {-4, -3, -2, -1, 1, 2, 3, 4}) {
        cd z = cd(k * h);
        std::vector<cld> parts;
        for (int n = -modes; n <= modes; ++n) {
            if (a.dim == 1 && q.dim == 1) {
                // Scalar path in extended precision: the direct part grows like
                // M^{a+1} and must cancel against the continued tails, so
                // per-mode double rounding would bias the finite part.
                cd qm = q.mode(double(n))(0, 0);
                cld lg(std::log((long double)std::abs(qm)), arg_cut(qm, q.cut));
                cld am(a.mode(double(n))(0, 0));
                parts.push_back(am * std::exp(cld(-z.real(), -z.imag()) * lg));
            } else {
                Mat qz = matrix_power_eig(q.mode(double(n)), -z, q.cut);
                parts.push_back(cld((a.mode(double(n)) * qz).trace()));
            }
        }
        for (int side : {0, 1}) {
            const MatSeries& ta = side ? a.tail_minus : a.tail_plus;
            const MatSeries& tq = side ? q.tail_minus : q.tail_plus;
            MatSeries s = ta * tq.pow(-z, q.cut);
            double qq = double(modes) + 1.0;
            for (int j = 0; j < std::min(opt.terms, s.len()); ++j) {
                cd c = s.coeff(j).trace();
                if (std::abs(c) < 1e-300) continue;
                cd sh = -(s.degree() - cd(double(j)));
                parts.push_back(cld(c) *
                                hurwitz_zeta_wide(cld(sh.real(), sh.imag()), (long double)qq));
            }
        }
        zs.push_back(z);
        fs.push_back(pairwise_sum(parts));
    }
    return laurent_fit(zs, fs, -1, 4)[1];
}

}  // namespace psido
