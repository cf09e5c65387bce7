#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "becgw/mode_dynamics.hpp"

using namespace becgw;

namespace {

constexpr double kPi = 3.14159265358979323846;

BecConfig reference_bec() {
    BecConfig cfg{};
    cfg.atom_mass = 1e-25;
    cfg.number_density = 7e20;
    cfg.sound_speed = 1.2e-2;
    cfg.box_length = 1e-3;
    return cfg;
}

/// Resonant mode along x (projection factor 1) for a wave of frequency f_hz.
PhononMode resonant_mode(double f_hz, double sound_speed) {
    const double omega = kPi * f_hz;
    return PhononMode::make(omega / sound_speed, 0.0, 0.0, sound_speed);
}

/// Runs the ODE pipeline and returns the fitted pair.
BogoliubovFit ode_pipeline(const PhononMode& mode, const GwWaveform& wave, double tol = 1e-10) {
    const double tau = wave.tau;
    const double period = 2.0 * kPi / mode.omega;
    const auto traj = evolve_mode_numeric(mode, wave, {-6.0 * tau, 6.0 * tau + 8.0 * period}, tol);
    return extract_bogoliubov(traj.after(6.0 * tau), mode.omega);
}

}  // namespace

TEST_CASE("waveform and mode invariants are enforced") {
    CHECK_THROWS_AS(GwWaveform(-1e-6, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(GwWaveform(0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(GwWaveform(0.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(PhononMode::make(0.0, 0.0, 0.0, 1.0), DomainError);

    const PhononMode m = PhononMode::make(3.0, 4.0, 0.0, 2.0);
    CHECK(m.omega == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(m.projection_factor() == doctest::Approx(-7.0 / 25.0).epsilon(1e-14));
}

TEST_CASE("beta_analytic limits and symmetry") {
    const double cs = 1.2e-2;
    const PhononMode mode = resonant_mode(1000.0, cs);
    const double omega_gw = 2.0 * kPi * 1000.0;

    SUBCASE("beta -> 0 as tau -> 0") {
        double prev = std::abs(beta_analytic(mode, GwWaveform(1e-6, omega_gw, 1e-4)).beta);
        for (double tau : {1e-5, 1e-6, 1e-7}) {
            const double b = std::abs(beta_analytic(mode, GwWaveform(1e-6, omega_gw, tau)).beta);
            CHECK(b < prev);
            prev = b;
        }
        CHECK(prev < 1e-18);
    }

    SUBCASE("beta vanishes for kx = ky by symmetry") {
        const PhononMode sym = PhononMode::make(2.0e5, 2.0e5, 1.0e5, cs);
        const auto pair = beta_analytic(sym, GwWaveform(1e-3, omega_gw, 1e-3));
        CHECK(pair.beta == std::complex<double>(0.0, 0.0));
        CHECK(pair.alpha == std::complex<double>(1.0, 0.0));
    }

    SUBCASE("resonant large-Omega-tau limit keeps only the resonant envelope") {
        const double tau = 10.0 * kPi / omega_gw;  // Omega tau = 10 pi
        const auto pair = beta_analytic(mode, GwWaveform(1e-6, omega_gw, tau));
        const double expected = 1e-6 * std::sqrt(kPi) * mode.omega * tau / 4.0;
        CHECK(pair.beta.real() == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("beta is odd under swapping the transverse axes") {
        const PhononMode mx = PhononMode::make(2.0e5, 0.5e5, 1.0e5, cs);
        const PhononMode my = PhononMode::make(0.5e5, 2.0e5, 1.0e5, cs);
        const GwWaveform wave(1e-6, omega_gw, 1e-3);
        const auto bx = beta_analytic(mx, wave).beta;
        const auto by = beta_analytic(my, wave).beta;
        CHECK(bx.real() == doctest::Approx(-by.real()).epsilon(1e-14));
    }

    SUBCASE("beta is linear in epsilon") {
        const GwWaveform w1(1e-6, omega_gw, 1e-3);
        const GwWaveform w2(2e-6, omega_gw, 1e-3);
        const double b1 = beta_analytic(mode, w1).beta.real();
        const double b2 = beta_analytic(mode, w2).beta.real();
        CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-14));
    }

    SUBCASE("beta decays past the peak as tau grows at fixed omega != Omega/2") {
        const PhononMode detuned = PhononMode::make(0.3 * omega_gw / cs, 0.0, 0.0, cs);
        double peak = 0.0;
        bool decaying = false;
        double prev = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double tau = std::pow(10.0, -5.0 + 3.0 * i / 40.0);
            const double b =
                std::abs(beta_analytic(detuned, GwWaveform(1e-6, omega_gw, tau)).beta);
            if (decaying) CHECK(b <= prev * (1.0 + 1e-12));
            if (i > 0 && b < prev && prev == peak) decaying = true;
            peak = std::max(peak, b);
            prev = b;
        }
        CHECK(decaying);
        CHECK(prev < 1e-3 * peak);
    }
}

TEST_CASE("unperturbed evolution stays on the positive-frequency circle") {
    const double cs = 1.2e-2;
    const PhononMode mode = resonant_mode(1000.0, cs);
    const GwWaveform wave(0.0, 2.0 * kPi * 1000.0, 1e-3);
    const auto traj = evolve_mode_numeric(mode, wave, {-6e-3, 6e-3 + 2e-3}, 1e-10);
    for (std::size_t i = 0; i < traj.size(); i += 7) {
        CHECK(std::abs(traj.psi[i]) == doctest::Approx(1.0).epsilon(1e-8));
    }
    const auto fit = extract_bogoliubov(traj.after(6e-3), mode.omega);
    CHECK(std::abs(fit.pair.alpha - 1.0) < 1e-8);
    CHECK(std::abs(fit.pair.beta) < 1e-8);
}

TEST_CASE("ODE oracle reproduces the analytic beta at resonance") {
    const double cs = 1.2e-2;
    const double f = 1000.0;
    const double omega_gw = 2.0 * kPi * f;
    const PhononMode mode = resonant_mode(f, cs);
    const double tau = 2.0 * kPi / omega_gw;  // Omega tau = 2 pi
    const GwWaveform wave(1e-6, omega_gw, tau);

    const auto fit = ode_pipeline(mode, wave);
    const double expected = beta_analytic(mode, wave).beta.real();
    CHECK(std::abs(fit.pair.beta) ==
          doctest::Approx(std::abs(expected)).epsilon(1e-2));

    SUBCASE("doubling epsilon doubles the fitted beta") {
        const GwWaveform wave2(2e-6, omega_gw, tau);
        const auto fit2 = ode_pipeline(mode, wave2);
        CHECK(std::abs(fit2.pair.beta) ==
              doctest::Approx(2.0 * std::abs(fit.pair.beta)).epsilon(1e-3));
    }
}

TEST_CASE("extract_bogoliubov on constructed samples") {
    const double omega = 2.0 * kPi * 500.0;
    ModeTrajectory traj;
    const std::complex<double> i_unit{0.0, 1.0};

    SUBCASE("pure positive-frequency input gives (1, 0)") {
        for (int j = 0; j < 64; ++j) {
            const double t = 0.01 + j * 1e-4;
            traj.t.push_back(t);
            traj.psi.push_back(std::exp(-i_unit * omega * t));
            traj.psi_dot.push_back(-i_unit * omega * std::exp(-i_unit * omega * t));
        }
        const auto fit = extract_bogoliubov(traj, omega);
        CHECK(std::abs(fit.pair.alpha - 1.0) < 1e-12);
        CHECK(std::abs(fit.pair.beta) < 1e-12);
        CHECK(fit.residual < 1e-12);
    }

    SUBCASE("mixed input recovers both coefficients") {
        for (int j = 0; j < 64; ++j) {
            const double t = 0.01 + j * 1e-4;
            const auto em = std::exp(-i_unit * omega * t);
            const auto ep = std::exp(i_unit * omega * t);
            traj.t.push_back(t);
            traj.psi.push_back(em + 0.1 * ep);
            traj.psi_dot.push_back(-i_unit * omega * em + 0.1 * i_unit * omega * ep);
        }
        const auto fit = extract_bogoliubov(traj, omega);
        CHECK(std::abs(fit.pair.alpha - 1.0) < 1e-12);
        CHECK(std::abs(fit.pair.beta - 0.1) < 1e-12);
    }

    SUBCASE("samples inside the window trip the residual check") {
        const double cs = 1.2e-2;
        const PhononMode mode = resonant_mode(1000.0, cs);
        const GwWaveform wave(1e-3, 2.0 * kPi * 1000.0, 1e-3);
        const auto full = evolve_mode_numeric(mode, wave, {-6e-3, 8e-3}, 1e-10);
        CHECK_THROWS_AS(extract_bogoliubov(full.after(-2e-3), mode.omega), FitResidualError);
    }
}

TEST_CASE("dispersion relation") {
    const BecConfig cfg = reference_bec();

    SUBCASE("Goldstone branch tends to cs k from below the chemical potential") {
        const double omega_target = 2.0 * kPi * 1e4;
        const double k = omega_target / cfg.sound_speed;
        const auto branch = dispersion(k, cfg);
        CHECK(std::abs(branch.omega_minus / (cfg.sound_speed * k) - 1.0) < 1e-6);
    }

    SUBCASE("k = 0 gives a gapless Goldstone branch and a gapped partner") {
        const auto branch = dispersion(0.0, cfg);
        CHECK(branch.omega_minus == 0.0);
        CHECK(branch.omega_plus > 0.0);
    }

    SUBCASE("omega_minus/(cs k) tends to 1 monotonically from above as k decreases") {
        // The correction scales as (k hbar / (m cs))^2, so the k hbar/(m c) < 1e-3
        // window probes it only when cs/c is moderate.
        BecConfig fast = cfg;
        fast.sound_speed = 0.1 * fast.c_light;
        const double km = fast.atom_mass * fast.c_light / fast.hbar;
        double prev_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 30; ++i) {
            const double k = km * std::pow(10.0, -3.0 - 3.0 * i / 30.0);  // 1e-3 .. 1e-6 km
            const double ratio = dispersion(k, fast).omega_minus / (fast.sound_speed * k);
            CHECK(ratio <= prev_ratio + 1e-14);
            CHECK(ratio >= 1.0 - 1e-12);
            prev_ratio = ratio;
        }
        CHECK(prev_ratio == doctest::Approx(1.0).epsilon(1e-10));

        // Physical condensate: same statement inside its own phonon window k << m cs/hbar.
        const double k_phonon = cfg.atom_mass * cfg.sound_speed / cfg.hbar;
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 20; ++i) {
            const double k = k_phonon * std::pow(10.0, -1.0 - 2.0 * i / 20.0);
            const double ratio = dispersion(k, cfg).omega_minus / (cfg.sound_speed * k);
            CHECK(ratio <= prev + 1e-14);
            CHECK(ratio >= 1.0 - 1e-12);
            prev = ratio;
        }
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("mu approximates m cs^2 / hbar for slow sound") {
        const auto branch = dispersion(1.0, cfg);
        const double expected = cfg.atom_mass * cfg.sound_speed * cfg.sound_speed / cfg.hbar;
        CHECK(branch.mu == doctest::Approx(expected).epsilon(1e-4));
        CHECK(branch.kappa > 0.0);
    }

    SUBCASE("superluminal-third sound speed is rejected") {
        BecConfig bad = cfg;
        bad.sound_speed = bad.c_light;  // cs/c = 1 > 1/sqrt(3)
        CHECK_THROWS_AS(dispersion(1.0, bad), DomainError);
    }
}

TEST_CASE("squeezing ceiling") {
    const BecConfig cfg = reference_bec();
    const double omega = 2.0 * kPi * 1e4;

    SUBCASE("worked point lands near r ~ 27") {
        const auto bound = max_squeezing(cfg, omega);
        CHECK(bound.r_max > 25.0);
        CHECK(bound.r_max < 29.0);
        CHECK_FALSE(bound.no_headroom);
    }

    SUBCASE("doubling omega lowers the ceiling by 2 ln 2") {
        const double r1 = max_squeezing(cfg, omega).r_max;
        const double r2 = max_squeezing(cfg, 2.0 * omega).r_max;
        CHECK(r1 - r2 == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    }

    SUBCASE("vanishing energy density flags no headroom") {
        BecConfig empty = cfg;
        empty.number_density = 0.0;
        const auto bound = max_squeezing(empty, omega);
        CHECK(bound.no_headroom);
        CHECK(bound.r_max == 0.0);
    }
}

TEST_CASE("diluteness parameter") {
    const BecConfig cfg = reference_bec();

    CHECK(gp_validity(cfg, 0.0) == 0.0);

    const double na3_1 = gp_validity(cfg, 1.0);
    const double na3_4 = gp_validity(cfg, 4.0);
    CHECK(na3_4 == doctest::Approx(16.0 * na3_1).epsilon(1e-13));

    // lambda cs / c = 0.1  =>  na^3 = 1e-2/(4 pi)^3
    BecConfig unit = cfg;
    unit.sound_speed = 0.1 * unit.c_light / 1.0;
    const double na3 = gp_validity(unit, 1.0);
    CHECK(na3 == doctest::Approx(5.0393e-6).epsilon(1e-4));
}
