#include "becgw/mode_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace becgw {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string describe(const char* what, double value) {
    std::ostringstream os;
    os << what << " = " << value;
    return os.str();
}

}  // namespace

GwWaveform::GwWaveform(double eps, double omega, double tau_s)
    : epsilon(eps), omega_gw(omega), tau(tau_s) {
    if (!(epsilon >= 0.0)) throw DomainError("GwWaveform: epsilon must be >= 0, " + describe("epsilon", eps));
    if (!(omega_gw > 0.0)) throw DomainError("GwWaveform: omega_gw must be > 0, " + describe("omega_gw", omega));
    if (!(tau > 0.0)) throw DomainError("GwWaveform: tau must be > 0, " + describe("tau", tau_s));
}

void BecConfig::validate() const {
    std::vector<std::string> bad;
    if (!(atom_mass > 0.0)) bad.push_back(describe("atom_mass", atom_mass));
    if (!(number_density > 0.0)) bad.push_back(describe("number_density", number_density));
    if (!(sound_speed > 0.0)) bad.push_back(describe("sound_speed", sound_speed));
    if (!(box_length > 0.0)) bad.push_back(describe("box_length", box_length));
    if (!(hbar > 0.0)) bad.push_back(describe("hbar", hbar));
    if (!(c_light > 0.0)) bad.push_back(describe("c_light", c_light));
    if (!bad.empty()) {
        std::string msg = "BecConfig: fields must be strictly positive:";
        for (const auto& s : bad) msg += " " + s + ";";
        throw DomainError(msg);
    }
    if (!(sound_speed < c_light)) throw DomainError("BecConfig: sound_speed must be far below c_light");
}

PhononMode PhononMode::make(double kx, double ky, double kz, double sound_speed) {
    PhononMode m{kx, ky, kz, 0.0};
    const double k = m.k_mag();
    if (!(k > 0.0)) throw DomainError("PhononMode: |k| must be > 0");
    if (!(sound_speed > 0.0)) throw DomainError("PhononMode: sound_speed must be > 0");
    m.omega = sound_speed * k;
    return m;
}

double PhononMode::k_mag() const { return std::sqrt(kx * kx + ky * ky + kz * kz); }

double PhononMode::projection_factor() const {
    const double k2 = kx * kx + ky * ky + kz * kz;
    return (kx * kx - ky * ky) / k2;
}

double gauss_envelope_difference(double omega, double omega_gw, double tau) {
    const double minus = omega_gw - 2.0 * omega;
    const double plus = omega_gw + 2.0 * omega;
    const double ea = -0.25 * minus * minus * tau * tau;  // exponent of the resonant term
    const double eb = -0.25 * plus * plus * tau * tau;
    const double gap = ea - eb;  // = 2 w Omega tau^2 >= 0 for w, Omega > 0
    if (gap < 500.0) {
        // exp(ea) and exp(eb) are close; expm1 keeps the difference exact.
        return std::exp(eb) * std::expm1(gap);
    }
    // The second term is negligible relative to the first; no cancellation.
    return std::exp(ea) - std::exp(eb);
}

double beta_coefficient(double omega, double omega_gw, double tau) {
    return 0.25 * std::sqrt(kPi) * omega * tau * gauss_envelope_difference(omega, omega_gw, tau);
}

BogoliubovPair beta_analytic(const PhononMode& mode, const GwWaveform& wave) {
    const double eps_tilde = wave.epsilon * mode.projection_factor();
    const double beta = eps_tilde * beta_coefficient(mode.omega, wave.omega_gw, wave.tau);
    if (!std::isfinite(beta)) {
        throw OverflowError("beta_analytic: non-finite result, " + describe("beta", beta));
    }
    BogoliubovPair out;
    out.alpha = {1.0, 0.0};
    out.beta = {beta, 0.0};
    return out;
}

ModeTrajectory ModeTrajectory::after(double t_min) const {
    ModeTrajectory out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t_min) {
            out.t.push_back(t[i]);
            out.psi.push_back(psi[i]);
            out.psi_dot.push_back(psi_dot[i]);
        }
    }
    return out;
}

ModeTrajectory evolve_mode_numeric(const PhononMode& mode, const GwWaveform& wave,
                                   std::pair<double, double> t_span, double tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 4>;  // Re psi, Im psi, Re psi', Im psi'

    const double t0 = t_span.first;
    const double t1 = t_span.second;
    const double tau = wave.tau;
    if (!(t0 < t1)) throw DomainError("evolve_mode_numeric: need t_span.first < t_span.second");
    if (t0 > -6.0 * tau || t1 < 6.0 * tau) {
        throw DomainError("evolve_mode_numeric: t_span must cover [-6 tau, 6 tau]");
    }
    if (!(tol > 0.0)) throw DomainError("evolve_mode_numeric: tol must be > 0");

    const double w = mode.omega;
    const double w2 = w * w;
    const double eps_tilde = wave.epsilon * mode.projection_factor();
    const double omega_gw = wave.omega_gw;

    auto system = [&](const State& x, State& dxdt, double t) {
        const double u = t / tau;
        const double drive = 1.0 + eps_tilde * std::exp(-u * u) * std::sin(omega_gw * t);
        const double f = -w2 * drive;
        dxdt[0] = x[2];
        dxdt[1] = x[3];
        dxdt[2] = f * x[0];
        dxdt[3] = f * x[1];
    };

    // Positive-frequency initial data psi = e^{-i w t} at t0.
    State x{std::cos(w * t0), -std::sin(w * t0), w * std::sin(w * t0), -w * std::cos(w * t0)};

    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());

    ModeTrajectory traj;
    auto record = [&](const State& s, double t) {
        traj.t.push_back(t);
        traj.psi.emplace_back(s[0], s[1]);
        traj.psi_dot.emplace_back(s[2], s[3]);
    };
    record(x, t0);

    double t = t0;
    double dt = 2.0 * kPi / w / 50.0;
    const double dt_floor = 16.0 * std::numeric_limits<double>::epsilon();
    std::size_t rejects_in_a_row = 0;
    std::size_t steps = 0;
    const std::size_t max_steps = 50'000'000;

    while (t < t1) {
        dt = std::min(dt, t1 - t);
        const auto result = stepper.try_step(system, x, t, dt);
        if (result == ode::fail) {
            if (++rejects_in_a_row > 500 || dt < dt_floor * std::max(std::abs(t), 1.0)) {
                throw IntegrationError("evolve_mode_numeric: step size underflow at t = " +
                                           std::to_string(t),
                                       t);
            }
            continue;
        }
        rejects_in_a_row = 0;
        record(x, t);
        if (++steps > max_steps) {
            throw IntegrationError("evolve_mode_numeric: step budget exhausted at t = " +
                                       std::to_string(t),
                                   t);
        }
    }
    return traj;
}

BogoliubovFit extract_bogoliubov(const ModeTrajectory& samples, double omega,
                                 double residual_threshold) {
    if (!(omega > 0.0)) throw DomainError("extract_bogoliubov: omega must be > 0");
    if (samples.size() < 4) throw DomainError("extract_bogoliubov: need at least 4 samples");

    const std::complex<double> i_unit{0.0, 1.0};
    std::complex<double> alpha_sum{0.0, 0.0};
    std::complex<double> beta_sum{0.0, 0.0};
    const std::size_t n = samples.size();

    // Each sample pair (psi, psi') inverts exactly onto the two-exponential basis.
    for (std::size_t j = 0; j < n; ++j) {
        const double t = samples.t[j];
        const std::complex<double> psi = samples.psi[j];
        const std::complex<double> v = samples.psi_dot[j] / omega;
        const std::complex<double> phase_p{std::cos(omega * t), std::sin(omega * t)};
        alpha_sum += 0.5 * (psi + i_unit * v) * phase_p;
        beta_sum += 0.5 * (psi - i_unit * v) / phase_p;
    }
    BogoliubovFit fit;
    fit.pair.alpha = alpha_sum / static_cast<double>(n);
    fit.pair.beta = beta_sum / static_cast<double>(n);

    double err2 = 0.0;
    double norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = samples.t[j];
        const std::complex<double> em{std::cos(omega * t), -std::sin(omega * t)};
        const std::complex<double> ep = std::conj(em);
        const std::complex<double> psi_model = fit.pair.alpha * em + fit.pair.beta * ep;
        const std::complex<double> v_model = -i_unit * fit.pair.alpha * em + i_unit * fit.pair.beta * ep;
        err2 += std::norm(psi_model - samples.psi[j]) + std::norm(v_model - samples.psi_dot[j] / omega);
        norm2 += std::norm(samples.psi[j]) + std::norm(samples.psi_dot[j] / omega);
    }
    fit.residual = std::sqrt(err2 / std::max(norm2, 1e-300));
    if (fit.residual > residual_threshold) {
        throw FitResidualError(
            "extract_bogoliubov: fit residual " + std::to_string(fit.residual) +
                " exceeds threshold; the window had likely not closed over the samples",
            fit.residual);
    }
    return fit;
}

DispersionBranch dispersion(double k, const BecConfig& config) {
    if (!(k >= 0.0)) throw DomainError("dispersion: k must be >= 0");
    const double s = config.sound_speed / config.c_light;
    if (!(s > 0.0) || s * s >= 1.0 / 3.0) {
        throw DomainError("dispersion: requires 0 < sound_speed/c < 1/sqrt(3), " +
                          describe("cs/c", s));
    }
    const double km = config.atom_mass * config.c_light / config.hbar;  // Compton wavenumber
    const double one_minus_3s2 = 1.0 - 3.0 * s * s;
    const double kappa_factor = std::sqrt((1.0 - s * s) / one_minus_3s2);
    const double kk2 = kappa_factor * kappa_factor * km * km;  // kappa^2, wavenumber units
    const double km2 = km * km;

    const double a = 3.0 * kk2 - km2;                    // > 0 in the allowed window
    const double disc = std::sqrt(a * a + 4.0 * k * k * kk2);
    const double sum = k * k + a;

    // kappa^2 - m^2 = km^2 * 2 s^2 / (1 - 3 s^2), kept in this form to avoid
    // subtracting nearly equal large numbers.
    const double kk2_minus_km2 = km2 * 2.0 * s * s / one_minus_3s2;

    DispersionBranch out;
    out.omega_plus = config.c_light * std::sqrt(sum + disc);
    // Goldstone branch via the branch-product identity:
    //   w-^2 * w+^2 = k^2 (k^2 + 2(kappa^2 - m^2))  =>  w-^2 = that / (sum + disc).
    out.omega_minus =
        config.c_light * k * std::sqrt((k * k + 2.0 * kk2_minus_km2) / (sum + disc));
    const double mc2_over_hbar = config.atom_mass * config.c_light * config.c_light / config.hbar;
    out.kappa = kappa_factor * mc2_over_hbar;
    // kappa - m, evaluated as (kappa^2 - m^2)/(kappa + m) for small cs/c.
    out.mu = mc2_over_hbar * (2.0 * s * s / one_minus_3s2) / (1.0 + kappa_factor);
    return out;
}

SqueezeBound max_squeezing(const BecConfig& config, double omega) {
    if (!(omega > 0.0)) throw DomainError("max_squeezing: omega must be > 0");
    SqueezeBound out;
    const double rho = config.number_density * config.atom_mass * config.c_light * config.c_light;
    const double cs3 = std::pow(config.sound_speed, 3);
    const double arg = 56.0 * kPi * kPi * cs3 * rho / (std::pow(omega, 4) * config.hbar);
    out.outside_linear_window = !(omega < 0.1 * config.chemical_potential_omega());
    if (!(arg > 1.0)) {
        out.no_headroom = true;
        out.r_max = 0.0;
        return out;
    }
    out.r_max = 0.5 * std::log(arg);
    return out;
}

double gp_validity(const BecConfig& config, double lambda_coupling) {
    if (!(lambda_coupling >= 0.0)) throw DomainError("gp_validity: lambda_coupling must be >= 0");
    const double x = lambda_coupling * config.sound_speed / config.c_light;
    const double four_pi = 4.0 * kPi;
    return x * x / (four_pi * four_pi * four_pi);
}

}  // namespace becgw
