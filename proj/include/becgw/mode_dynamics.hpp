#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "becgw/errors.hpp"

namespace becgw {

/// CODATA values used as defaults everywhere. All public interfaces are SI.
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kLightSpeed = 299792458.0;   // m/s

/// Gaussian-windowed sinusoidal strain h+(t) = epsilon * exp(-t^2/tau^2) * sin(Omega t).
struct GwWaveform {
    double epsilon;    ///< dimensionless strain amplitude, >= 0
    double omega_gw;   ///< angular frequency Omega in rad/s, > 0
    double tau;        ///< window duration in s, > 0

    GwWaveform(double eps, double omega, double tau_s);
};

/// Condensate parameters plus the physical constants the formulas need.
struct BecConfig {
    double atom_mass;        // kg
    double number_density;   // 1/m^3
    double sound_speed;      // m/s
    double box_length;       // m
    double hbar = kHbar;     // J s
    double c_light = kLightSpeed;  // m/s

    void validate() const;

    /// Chemical potential as an angular frequency, m*cs^2/hbar in rad/s.
    /// Linear phonon dispersion holds for omega well below this.
    double chemical_potential_omega() const { return atom_mass * sound_speed * sound_speed / hbar; }
};

/// One acoustic mode of the box. omega is derived as cs*|k| at construction.
struct PhononMode {
    double kx, ky, kz;   // rad/m
    double omega;        // rad/s, equals sound_speed * |k|

    static PhononMode make(double kx, double ky, double kz, double sound_speed);

    double k_mag() const;

    /// Orientation factor (kx^2 - ky^2)/|k|^2 multiplying the strain for this
    /// mode; the effective drive amplitude is eps_tilde = epsilon * this.
    double projection_factor() const;
};

/// Mixing coefficients between positive- and negative-frequency solutions.
/// First order in the strain: alpha = 1 exactly, |alpha|^2 - |beta|^2 = 1 + O(eps^2).
struct BogoliubovPair {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};
};

/// Both branches of the full dispersion relation, plus the condensate
/// phase-rotation rate kappa they derive from.
struct DispersionBranch {
    double omega_plus;    // rad/s, gapped branch
    double omega_minus;   // rad/s, Goldstone branch, -> cs*k as k -> 0
    double kappa;         // rad/s
    double mu;            // rad/s, kappa - m c^2/hbar ~= m cs^2/hbar
};

/// Result of the squeezing ceiling estimate.
struct SqueezeBound {
    double r_max = 0.0;
    bool no_headroom = false;            ///< log argument <= 1, bound returned as 0
    bool outside_linear_window = false;  ///< omega not well below the chemical potential
};

/// Stable evaluation of exp(-(Omega-2w)^2 tau^2/4) - exp(-(Omega+2w)^2 tau^2/4).
/// Both exponents are non-positive, so this never overflows; the small-argument
/// cancellation is handled with expm1.
double gauss_envelope_difference(double omega, double omega_gw, double tau);

/// beta per unit effective strain: (sqrt(pi) w tau / 4) * gauss_envelope_difference.
double beta_coefficient(double omega, double omega_gw, double tau);

/// First-order Bogoliubov coefficients of a mode driven by the windowed strain.
/// alpha = 1; beta = eps_tilde * beta_coefficient(omega, Omega, tau).
BogoliubovPair beta_analytic(const PhononMode& mode, const GwWaveform& wave);

/// Time samples of the driven mode equation's complex solution.
struct ModeTrajectory {
    std::vector<double> t;
    std::vector<std::complex<double>> psi;
    std::vector<std::complex<double>> psi_dot;

    /// Samples with t >= t_min (the post-window segment).
    ModeTrajectory after(double t_min) const;
    std::size_t size() const { return t.size(); }
};

/// Integrates psi'' + [1 + eps_tilde e^{-t^2/tau^2} sin(Omega t)] w^2 psi = 0
/// from t_span.first to t_span.second with positive-frequency initial data
/// psi(t0) = e^{-i w t0}. The span must cover [-6 tau, 6 tau] so the window is
/// negligible at both ends. Samples are recorded at every accepted step.
ModeTrajectory evolve_mode_numeric(const PhononMode& mode, const GwWaveform& wave,
                                   std::pair<double, double> t_span, double tol = 1e-10);

/// Bogoliubov pair recovered from post-window samples plus the residual of
/// the two-exponential model they were fitted with.
struct BogoliubovFit {
    BogoliubovPair pair;
    double residual = 0.0;
};

/// Projects sampled (psi, psi_dot) onto alpha e^{-iwt} + beta e^{+iwt}.
/// The samples must all be post-window (envelope < 1e-12); a residual above
/// residual_threshold raises FitResidualError.
BogoliubovFit extract_bogoliubov(const ModeTrajectory& samples, double omega,
                                 double residual_threshold = 1e-6);

/// Full dispersion relation of the condensate at wavevector k. The Goldstone
/// branch is evaluated in a cancellation-free form so that its deviation from
/// cs*k is meaningful even at k many orders below the Compton wavenumber.
/// Requires sound_speed/c < 1/sqrt(3).
DispersionBranch dispersion(double k, const BecConfig& config);

/// Squeezing ceiling r_max = (1/2) ln(56 pi^2 cs^3 rho / (w^4 hbar)) with
/// rho = n m c^2. Flags (rather than throws) when the log argument has no
/// headroom or omega sits outside the linear-dispersion window.
SqueezeBound max_squeezing(const BecConfig& config, double omega);

/// Diluteness parameter n a^3 = (lambda cs / c)^2 / (4 pi)^3. The caller
/// compares against its own threshold (1e-3 is customary).
double gp_validity(const BecConfig& config, double lambda_coupling);

}  // namespace becgw
