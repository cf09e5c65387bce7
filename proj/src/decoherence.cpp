#include "becgw/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace becgw {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGolden = 0.61803398874989484820;

double damped_log_fom(double tau, double r0, double gamma) {
    return 4.0 * std::log(tau) + 4.0 * r0 - 2.0 * gamma * tau;
}

}  // namespace

DecoherenceParams::DecoherenceParams(double r0_in, double mu0_in, double mu_inf_in, double gamma)
    : r0(r0_in), mu0(mu0_in), mu_inf(mu_inf_in), gamma_b(gamma) {
    if (!(r0 >= 0.0)) throw DomainError("DecoherenceParams: r0 must be >= 0");
    if (!(mu0 > 0.0 && mu0 <= 1.0)) throw DomainError("DecoherenceParams: mu0 must be in (0, 1]");
    if (!(mu_inf > 0.0 && mu_inf <= 1.0))
        throw DomainError("DecoherenceParams: mu_inf must be in (0, 1]");
    if (!(gamma_b >= 0.0)) throw DomainError("DecoherenceParams: gamma_b must be >= 0");
}

double beliaev_rate(const BecConfig& config, double omega_k) {
    if (!(omega_k >= 0.0)) throw DomainError("beliaev_rate: omega_k must be >= 0");
    const double cs5 = std::pow(config.sound_speed, 5);
    return 3.0 / (640.0 * kPi) * config.hbar * std::pow(omega_k, 5) /
           (config.atom_mass * config.number_density * cs5);
}

DecoherenceTime decoherence_time(const DecoherenceParams& p) {
    if (!(p.gamma_b > 0.0)) throw DomainError("decoherence_time: gamma_b must be > 0");
    const double x = p.mu0 / p.mu_inf;
    const double c = std::cosh(2.0 * p.r0);

    double arg;
    if (x == 1.0) {
        // (2 - 2 cosh 2r0)/(1 - cosh 2r0) = 2 identically.
        arg = 2.0;
    } else {
        const double num = x + 1.0 / x - 2.0 * c;
        const double den = x - c;
        if (num == 0.0 || den == 0.0 || (num > 0.0) != (den > 0.0)) {
            std::string which;
            if (den == 0.0) which = "mu0/mu_inf - cosh(2 r0) vanishes";
            else if (num == 0.0) which = "mu0/mu_inf + mu_inf/mu0 - 2 cosh(2 r0) vanishes";
            else which = "numerator and denominator have opposite signs";
            throw DomainError("decoherence_time: log argument not positive (" + which + ")");
        }
        arg = num / den;
    }
    DecoherenceTime out;
    out.t_d = std::log(arg) / p.gamma_b;
    out.advisory_condition_met = p.r0 > std::max(x, 1.0 / x);
    return out;
}

double purity_at(const DecoherenceParams& p, double t) {
    if (!(t >= 0.0)) throw DomainError("purity_at: t must be >= 0");
    const double em = std::exp(-p.gamma_b * t);
    const double q = p.mu0 / p.mu_inf;
    const double one_minus = -std::expm1(-p.gamma_b * t);  // 1 - e^{-gt}, exact for small gt
    const double bracket = em * em + q * q * one_minus * one_minus +
                           2.0 * q * em * one_minus * std::cosh(2.0 * p.r0);
    return p.mu0 / std::sqrt(bracket);
}

SqueezingValue squeezing_at(const DecoherenceParams& p, double t) {
    const double mu = purity_at(p, t);
    const double em = std::exp(-p.gamma_b * t);
    const double one_minus = -std::expm1(-p.gamma_b * t);
    const double y = mu * (em * std::cosh(2.0 * p.r0) / p.mu0 + one_minus / p.mu_inf);
    if (y < 1.0) return {0.0, true};
    return {0.5 * std::acosh(y), false};
}

OptimalTau optimal_tau(const DecoherenceParams& p, const GwWaveform& wave) {
    const double lower = 2.0 * kPi / wave.omega_gw;
    const double upper = (p.gamma_b > 0.0) ? 10.0 / p.gamma_b : 1e4 * lower;

    OptimalTau out{lower, false, false};
    if (lower > upper) {
        out.infeasible = true;
        out.at_bound = true;
        return out;
    }

    const double ulo = std::log(lower);
    const double uhi = std::log(upper);

    // Coarse scan brackets the maximum and catches a boundary argmax.
    const int scan_points = 33;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan_points; ++i) {
        const double u = ulo + (uhi - ulo) * i / (scan_points - 1);
        const double v = damped_log_fom(std::exp(u), p.r0, p.gamma_b);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == 0 || best == scan_points - 1) {
        out.tau_star = (best == 0) ? lower : upper;
        out.at_bound = true;
        return out;
    }

    double a = ulo + (uhi - ulo) * (best - 1) / (scan_points - 1);
    double b = ulo + (uhi - ulo) * (best + 1) / (scan_points - 1);
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = damped_log_fom(std::exp(x1), p.r0, p.gamma_b);
    double f2 = damped_log_fom(std::exp(x2), p.r0, p.gamma_b);
    for (int it = 0; it < 100 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = damped_log_fom(std::exp(x2), p.r0, p.gamma_b);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = damped_log_fom(std::exp(x1), p.r0, p.gamma_b);
        }
    }
    out.tau_star = std::exp(0.5 * (a + b));
    return out;
}

SensitivityPoint decohered_sensitivity(const BecConfig& config, const GwWaveform& wave,
                                       const SqueezeParams& p0, const MeasurementPlan& plan,
                                       const DecoherenceParams& dec, double gamma_scale) {
    if (std::abs(plan.tau - wave.tau) > 1e-9 * wave.tau) {
        throw DomainError("decohered_sensitivity: plan.tau must equal the waveform window tau");
    }
    if (std::abs(dec.r0 - p0.r) > 1e-12 * std::max(1.0, p0.r)) {
        throw DomainError("decohered_sensitivity: dec.r0 must equal the initial squeezing p0.r");
    }
    if (!(gamma_scale >= 0.0)) throw DomainError("decohered_sensitivity: gamma_scale must be >= 0");
    config.validate();

    const double m_count = plan.measurement_count();
    const double cs = config.sound_speed;
    const double length = config.box_length;
    const double tau = wave.tau;
    const double omega_gw = wave.omega_gw;
    const double k_unit = kPi * cs / length;

    const double prefactor =
        std::pow(kPi, 4) * m_count * cs * cs * tau * tau / (480.0 * length * length);

    auto integrand = [&](double n) {
        const double omega = k_unit * n;
        const double d = gauss_envelope_difference(omega, omega_gw, tau);
        const double gamma = gamma_scale * beliaev_rate(config, omega);
        const DecoherenceParams per_mode(p0.r, dec.mu0, dec.mu_inf, gamma);
        const double r_t = squeezing_at(per_mode, tau).r;
        const double mu_t = purity_at(per_mode, tau);
        const double r_value = r_factor(SqueezeParams(r_t, p0.phi));
        const double n2 = n * n;
        return n2 * n2 * d * d * r_value * mu_t;
    };

    const double n_res = omega_gw * length / (2.0 * kPi * cs);
    const double width = length / (2.0 * kPi * cs * tau);
    const double lo = std::max(0.0, n_res - 50.0 * width - 10.0);
    const double hi = n_res + 50.0 * width + 10.0;

    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err1 = 0.0, err2 = 0.0, err3 = 0.0;
    double total = quad::integrate(integrand, lo, n_res + 1.0, 15, 1e-10, &err1);
    total += quad::integrate(integrand, n_res + 1.0, hi, 15, 1e-10, &err2);
    if (lo > 0.0) total += quad::integrate(integrand, 0.0, lo, 15, 1e-10, &err3);

    if (!std::isfinite(total) || !(total > 0.0)) {
        throw QuadratureError("decohered_sensitivity: mode integral not positive and finite");
    }
    if ((err1 + err2 + err3) > 1e-7 * total) {
        throw QuadratureError("decohered_sensitivity: failed to reach the requested accuracy");
    }

    const double info = prefactor * total;
    SensitivityPoint pt;
    pt.f_gw = omega_gw / (2.0 * kPi);
    pt.delta_eps_sq = 1.0 / (info * static_cast<double>(plan.n_becs));
    pt.curve_value = std::sqrt(pt.delta_eps_sq / pt.f_gw);
    pt.dispersion_valid = 0.5 * omega_gw < 0.1 * config.chemical_potential_omega();
    return pt;
}

}  // namespace becgw
