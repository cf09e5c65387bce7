#pragma once

#include <string>
#include <utility>
#include <vector>

#include "becgw/gaussian_metrology.hpp"
#include "becgw/mode_dynamics.hpp"

namespace becgw {

/// How the condensate is interrogated: each measurement lasts tau seconds,
/// repeated for t_obs seconds total, on n_becs condensates in parallel.
struct MeasurementPlan {
    double tau;     // s
    double t_obs;   // s
    int n_becs = 1;

    MeasurementPlan(double tau_s, double t_obs_s, int n = 1);

    /// Number of independent measurements M = t_obs / tau.
    double measurement_count() const { return t_obs / tau; }
};

/// One point of a sensitivity-versus-frequency curve.
struct SensitivityPoint {
    double f_gw;           // Hz
    double delta_eps_sq;   // dimensionless mean-square strain error
    double curve_value;    // sqrt(delta_eps_sq / f_gw), Hz^{-1/2}
    bool dispersion_valid = true;  ///< half-frequency phonon sits a decade below mu
};

/// Total information aggregated over the discrete box modes, with a
/// truncation diagnostic for the lattice cutoff.
struct ModeSumResult {
    double value;              ///< 1/<delta eps^2>_tot
    bool truncation_warning;   ///< summand at the lattice boundary >= 1e-8 of the peak
    int n_max;
};

/// Per-plan information of a single mode, M * (pi w^2 tau^2 / 64) R * envelope^2.
double single_mode_bound(const PhononMode& mode, const GwWaveform& wave,
                         const SqueezeParams& p, const MeasurementPlan& plan);

/// Solid-angle average of ((kx^2 - ky^2)/k^2)^2 = 4/15.
double angular_factor();

/// Discrete sum over box modes k = (pi/L)(nx, ny, nz), positive integer
/// triples up to n_max per axis, with the 4/15 angular average applied.
ModeSumResult mode_sum_discrete(const BecConfig& config, const GwWaveform& wave,
                                const SqueezeParams& p, const MeasurementPlan& plan,
                                int n_max);

/// Continuum limit of the mode sum by adaptive quadrature over the radial
/// mode number, windowed around the resonant peak.
double mode_integral_quadrature(const BecConfig& config, const GwWaveform& wave,
                                const SqueezeParams& p, const MeasurementPlan& plan);

/// Closed form of the continuum mode integral. The e^{tau^2 Omega^2/2}
/// factors are combined before exponentiation, so it never overflows.
double mode_integral_closed(const BecConfig& config, const GwWaveform& wave,
                            const SqueezeParams& p, const MeasurementPlan& plan);

/// Total mean-square strain error from the closed form, divided across
/// n_becs condensates, with the plotted curve value sqrt(<eps^2>)/sqrt(f).
SensitivityPoint total_sensitivity(const BecConfig& config, const GwWaveform& wave,
                                   const SqueezeParams& p, const MeasurementPlan& plan);

/// Sensitivity curve over a frequency grid. Per-point failures are recorded
/// in `errors` as (grid index, message) and do not abort the sweep.
struct SweepOutput {
    std::vector<SensitivityPoint> points;
    std::vector<std::pair<std::size_t, std::string>> errors;
};

SweepOutput sweep_curve(const BecConfig& config, const SqueezeParams& p,
                        const MeasurementPlan& plan, const std::vector<double>& f_grid);

}  // namespace becgw
