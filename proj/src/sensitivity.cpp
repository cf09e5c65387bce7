#include "becgw/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace becgw {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_consistent_tau(const GwWaveform& wave, const MeasurementPlan& plan) {
    if (std::abs(plan.tau - wave.tau) > 1e-9 * wave.tau) {
        throw DomainError("measurement duration plan.tau must equal the waveform window tau");
    }
}

/// Per-measurement information of one mode: (pi w^2 tau^2/64) R envelope^2,
/// written as R * beta_coefficient^2 / 4.
double per_measurement_info(double omega, const GwWaveform& wave, double r_value) {
    const double g = beta_coefficient(omega, wave.omega_gw, wave.tau);
    return 0.25 * r_value * g * g;
}

}  // namespace

MeasurementPlan::MeasurementPlan(double tau_s, double t_obs_s, int n)
    : tau(tau_s), t_obs(t_obs_s), n_becs(n) {
    if (!(tau > 0.0)) throw DomainError("MeasurementPlan: tau must be > 0");
    if (!(t_obs >= tau)) throw DomainError("MeasurementPlan: t_obs must be >= tau");
    if (n_becs < 1) throw DomainError("MeasurementPlan: n_becs must be >= 1");
}

double single_mode_bound(const PhononMode& mode, const GwWaveform& wave,
                         const SqueezeParams& p, const MeasurementPlan& plan) {
    require_consistent_tau(wave, plan);
    return plan.measurement_count() * per_measurement_info(mode.omega, wave, r_factor(p));
}

double angular_factor() { return 4.0 / 15.0; }

ModeSumResult mode_sum_discrete(const BecConfig& config, const GwWaveform& wave,
                                const SqueezeParams& p, const MeasurementPlan& plan,
                                int n_max) {
    require_consistent_tau(wave, plan);
    if (n_max < 1) throw DomainError("mode_sum_discrete: n_max must be >= 1");
    if (n_max > 4000) throw DomainError("mode_sum_discrete: n_max beyond the supported lattice");

    const double r_value = r_factor(p);
    const double m_count = plan.measurement_count();
    const double k_unit = kPi / config.box_length;  // rad/m per mode index

    // The summand depends on the triple (nx, ny, nz) only through
    // nx^2+ny^2+nz^2, so count lattice points per integer radius-squared once
    // and evaluate the radial profile once per shell.
    const std::size_t s2_max = 2ull * n_max * n_max;
    const std::size_t s3_max = 3ull * n_max * n_max;
    std::vector<std::uint32_t> c2(s2_max + 1, 0);
    for (int i = 1; i <= n_max; ++i) {
        for (int j = 1; j <= n_max; ++j) {
            ++c2[static_cast<std::size_t>(i) * i + static_cast<std::size_t>(j) * j];
        }
    }
    std::vector<std::uint32_t> c3(s3_max + 1, 0);
    for (int k = 1; k <= n_max; ++k) {
        const std::size_t k2 = static_cast<std::size_t>(k) * k;
        for (std::size_t s2 = 2; s2 <= s2_max; ++s2) {
            c3[k2 + s2] += c2[s2];
        }
    }

    double sum = 0.0;
    double peak = 0.0;
    for (std::size_t s = 3; s <= s3_max; ++s) {
        if (c3[s] == 0) continue;
        const double omega = config.sound_speed * k_unit * std::sqrt(static_cast<double>(s));
        const double term = m_count * per_measurement_info(omega, wave, r_value);
        peak = std::max(peak, term);
        sum += static_cast<double>(c3[s]) * term;
    }

    // Boundary shell closest to the origin is the face center n = n_max.
    const double omega_face = config.sound_speed * k_unit * static_cast<double>(n_max);
    const double face_term = m_count * per_measurement_info(omega_face, wave, r_value);

    ModeSumResult out;
    out.value = angular_factor() * sum;
    out.truncation_warning = peak > 0.0 && face_term >= 1e-8 * peak;
    out.n_max = n_max;
    return out;
}

double mode_integral_quadrature(const BecConfig& config, const GwWaveform& wave,
                                const SqueezeParams& p, const MeasurementPlan& plan) {
    require_consistent_tau(wave, plan);
    config.validate();

    const double r_value = r_factor(p);
    const double m_count = plan.measurement_count();
    const double cs = config.sound_speed;
    const double length = config.box_length;
    const double tau = wave.tau;
    const double omega_gw = wave.omega_gw;
    const double k_unit = kPi * cs / length;  // omega per mode index

    const double prefactor =
        std::pow(kPi, 4) * m_count * cs * cs * r_value * tau * tau / (480.0 * length * length);

    auto integrand = [&](double n) {
        const double d = gauss_envelope_difference(k_unit * n, omega_gw, tau);
        const double n2 = n * n;
        return n2 * n2 * d * d;
    };

    // The resonant envelope peaks at n ~ Omega L / (2 pi cs) with Gaussian
    // width L/(2 pi cs tau); pin the panels to that structure so the adaptive
    // rule cannot miss a narrow distant bump.
    const double n_res = omega_gw * length / (2.0 * kPi * cs);
    const double width = length / (2.0 * kPi * cs * tau);
    const double lo = std::max(0.0, n_res - 50.0 * width - 10.0);
    const double hi = n_res + 50.0 * width + 10.0;

    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err1 = 0.0, err2 = 0.0, err3 = 0.0;
    double total = quad::integrate(integrand, lo, n_res + 1.0, 15, 1e-10, &err1);
    total += quad::integrate(integrand, n_res + 1.0, hi, 15, 1e-10, &err2);
    if (lo > 0.0) total += quad::integrate(integrand, 0.0, lo, 15, 1e-10, &err3);

    if (!(total >= 0.0) || !std::isfinite(total)) {
        throw QuadratureError("mode_integral_quadrature: non-finite integral");
    }
    const double err_total = err1 + err2 + err3;
    if (total > 0.0 && err_total > 1e-7 * total) {
        throw QuadratureError("mode_integral_quadrature: failed to reach the requested accuracy");
    }
    return prefactor * total;
}

double mode_integral_closed(const BecConfig& config, const GwWaveform& wave,
                            const SqueezeParams& p, const MeasurementPlan& plan) {
    require_consistent_tau(wave, plan);
    config.validate();

    const double x2 = wave.omega_gw * wave.omega_gw * wave.tau * wave.tau;  // (Omega tau)^2
    const double bracket = x2 * x2 + 6.0 * x2 - 3.0 * std::expm1(-0.5 * x2);
    const double l3 = std::pow(config.box_length, 3);
    const double cs3 = std::pow(config.sound_speed, 3);
    const double tau3 = std::pow(wave.tau, 3);
    return plan.measurement_count() * l3 * r_factor(p) * bracket /
           (7680.0 * std::sqrt(2.0 * kPi) * cs3 * tau3);
}

SensitivityPoint total_sensitivity(const BecConfig& config, const GwWaveform& wave,
                                   const SqueezeParams& p, const MeasurementPlan& plan) {
    const double info = mode_integral_closed(config, wave, p, plan);
    if (!(info > 0.0) || !std::isfinite(info)) {
        throw DomainError("total_sensitivity: information bound is not positive and finite");
    }
    SensitivityPoint pt;
    pt.f_gw = wave.omega_gw / (2.0 * kPi);
    pt.delta_eps_sq = 1.0 / (info * static_cast<double>(plan.n_becs));
    pt.curve_value = std::sqrt(pt.delta_eps_sq / pt.f_gw);
    // Phonons at half the wave frequency must sit a decade below the chemical potential.
    pt.dispersion_valid = 0.5 * wave.omega_gw < 0.1 * config.chemical_potential_omega();
    return pt;
}

SweepOutput sweep_curve(const BecConfig& config, const SqueezeParams& p,
                        const MeasurementPlan& plan, const std::vector<double>& f_grid) {
    if (!std::is_sorted(f_grid.begin(), f_grid.end())) {
        throw DomainError("sweep_curve: frequency grid must be sorted ascending");
    }
    SweepOutput out;
    out.points.reserve(f_grid.size());
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        try {
            const GwWaveform wave(0.0, 2.0 * kPi * f_grid[i], plan.tau);
            out.points.push_back(total_sensitivity(config, wave, p, plan));
        } catch (const Error& e) {
            out.errors.emplace_back(i, e.what());
        }
    }
    return out;
}

}  // namespace becgw
