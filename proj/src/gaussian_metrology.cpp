#include "becgw/gaussian_metrology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace becgw {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

Mat2 to_mat(const CovMatrix2& s) { return {s.s11, s.s12, s.s12, s.s22}; }

CovMatrix2 symmetrized(const Mat2& m) {
    return {m.m11, 0.5 * (m.m12 + m.m21), m.m22};
}

}  // namespace

SqueezeParams::SqueezeParams(double r_in, double phi_in) : r(r_in), phi(phi_in) {
    if (!(r >= 0.0)) throw DomainError("SqueezeParams: r must be >= 0");
    if (!std::isfinite(phi)) throw DomainError("SqueezeParams: phi must be finite");
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
}

double db_to_r(double s_db) {
    if (!(s_db >= 0.0)) throw DomainError("db_to_r: decibel value must be >= 0");
    return s_db * std::log(10.0) / 20.0;
}

CovMatrix2 squeezed_cov(const SqueezeParams& p) {
    const double ch = std::cosh(2.0 * p.r);
    const double sh = std::sinh(2.0 * p.r);
    const double c = std::cos(p.phi);
    const double s = std::sin(p.phi);
    return {0.5 * (ch + c * sh), -0.5 * s * sh, 0.5 * (ch - c * sh)};
}

Mat2 mode_matrix(const BogoliubovPair& b) {
    const std::complex<double> amb = b.alpha - b.beta;
    const std::complex<double> apb = b.alpha + b.beta;
    return {amb.real(), amb.imag(), -apb.imag(), apb.real()};
}

CovMatrix2 transform_cov(const CovMatrix2& sigma0, const BogoliubovPair& b, TransformForm form) {
    const Mat2 m = mode_matrix(b);
    const Mat2 mt = {m.m11, m.m21, m.m12, m.m22};
    const Mat2 right = (form == TransformForm::PaperProduct) ? m : mt;
    return symmetrized(m * to_mat(sigma0) * right);
}

double fidelity(const CovMatrix2& a, const CovMatrix2& b) {
    if (!a.positive_definite() || !b.positive_definite()) {
        throw DomainError("fidelity: covariance matrices must be positive definite");
    }
    const double delta =
        (a.s11 + b.s11) * (a.s22 + b.s22) - (a.s12 + b.s12) * (a.s12 + b.s12);
    double lambda = 4.0 * (a.det() - 0.25) * (b.det() - 0.25);
    if (lambda < 0.0) {
        // Pure states have det = 1/4 analytically; roundoff can push one factor
        // barely negative. Anything beyond roundoff scale means an unphysical input.
        if (-lambda <= 1e-15 * std::max(1.0, -lambda)) {
            lambda = 0.0;
        } else {
            throw DomainError("fidelity: input violates the uncertainty bound det >= 1/4");
        }
    }
    const double denom = std::sqrt(delta + lambda) - std::sqrt(lambda);
    if (!(denom > 0.0)) throw DomainError("fidelity: degenerate determinant functionals");
    return std::min(1.0, 1.0 / denom);
}

CovExpansion expand_transform_cov(const CovMatrix2& sigma0, std::complex<double> beta_slope) {
    const double x = beta_slope.real();
    const double y = beta_slope.imag();
    // M(eps) = I + eps K with K = [[-x, -y], [-y, x]]; K is symmetric, so
    // sigma1 = K sigma0 + sigma0 K and sigma2 = K sigma0 K, entrywise exact.
    CovExpansion e;
    e.sigma0 = sigma0;
    e.sigma1.s11 = -2.0 * (x * sigma0.s11 + y * sigma0.s12);
    e.sigma1.s22 = 2.0 * (x * sigma0.s22 - y * sigma0.s12);
    e.sigma1.s12 = -y * (sigma0.s11 + sigma0.s22);
    const Mat2 k{-x, -y, -y, x};
    e.sigma2 = symmetrized(k * to_mat(sigma0) * k);
    return e;
}

QfiResult qfi_perturbative(const CovMatrix2& sigma0, const CovMatrix2& sigma1,
                           const CovMatrix2& sigma2) {
    const double h =
        2.0 * (sigma0.s11 * sigma2.s22 + sigma2.s11 * sigma0.s22 - 2.0 * sigma0.s12 * sigma2.s12) +
        0.5 * (sigma1.s11 * sigma1.s22 - 2.0 * sigma1.s12 * sigma1.s12);
    QfiResult out;
    out.h_eps = h;
    out.method = QfiResult::Method::Perturbative;
    return out;
}

QfiResult qfi_finite_difference(const std::function<CovMatrix2(double)>& sigma_of_eps,
                                double d_eps) {
    if (!(d_eps > 0.0)) throw DomainError("qfi_finite_difference: d_eps must be > 0");
    const CovMatrix2 base = sigma_of_eps(0.0);

    auto estimate = [&](double h) {
        const CovMatrix2 sp = sigma_of_eps(h);
        const CovMatrix2 sm = sigma_of_eps(-h);
        const double inv2h = 1.0 / (2.0 * h);
        const double invh2 = 1.0 / (h * h);
        const double d1_11 = (sp.s11 - sm.s11) * inv2h;
        const double d1_12 = (sp.s12 - sm.s12) * inv2h;
        const double d1_22 = (sp.s22 - sm.s22) * inv2h;
        const double d2_11 = 0.5 * (sp.s11 - 2.0 * base.s11 + sm.s11) * invh2;
        const double d2_12 = 0.5 * (sp.s12 - 2.0 * base.s12 + sm.s12) * invh2;
        const double d2_22 = 0.5 * (sp.s22 - 2.0 * base.s22 + sm.s22) * invh2;
        return 2.0 * (base.s11 * d2_22 + d2_11 * base.s22 - 2.0 * base.s12 * d2_12) +
               0.5 * (d1_11 * d1_22 - 2.0 * d1_12 * d1_12);
    };

    const double coarse = estimate(d_eps);
    const double fine = estimate(0.5 * d_eps);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    const double scale = std::max({std::abs(extrapolated), std::abs(fine), 1e-12});
    if (std::abs(fine - coarse) > 1e-6 * scale) {
        throw ConvergenceError(
            "qfi_finite_difference: step-halved estimates disagree; the curve is not "
            "quadratic at this d_eps",
            coarse, fine);
    }
    QfiResult out;
    out.h_eps = extrapolated;
    out.method = QfiResult::Method::FiniteDifference;
    out.d_eps_used = d_eps;
    return out;
}

double r_factor(const SqueezeParams& p) {
    const double sh = std::sinh(2.0 * p.r);
    const double sp = std::sin(p.phi);
    return sh * sh * (6.0 * sp * sp - 2.0) + std::cosh(4.0 * p.r) + 1.0;
}

double r_factor_max(double r) { return 3.0 * std::cosh(4.0 * r) - 1.0; }

}  // namespace becgw
