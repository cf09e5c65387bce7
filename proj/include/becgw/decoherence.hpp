#pragma once

#include "becgw/sensitivity.hpp"

namespace becgw {

/// Zero-temperature Beliaev damping model of a squeezed mode.
struct DecoherenceParams {
    double r0;       ///< initial squeezing
    double mu0;      ///< initial purity, in (0, 1]
    double mu_inf;   ///< asymptotic purity, in (0, 1]
    double gamma_b;  ///< damping rate in 1/s, >= 0

    DecoherenceParams(double r0_in, double mu0_in, double mu_inf_in, double gamma);
};

/// Beliaev rate gamma_B = (3/640 pi) hbar w^5 / (m n cs^5).
double beliaev_rate(const BecConfig& config, double omega_k);

struct DecoherenceTime {
    double t_d;  // s
    /// Advisory only: the literature quotes validity as r0 > max(mu0/mu_inf,
    /// mu_inf/mu0), which compares a squeezing parameter with a purity ratio.
    /// The operative precondition is positivity of the log argument.
    bool advisory_condition_met;
};

/// t_d = (1/gamma_B) ln[(mu0/mu_inf + mu_inf/mu0 - 2 cosh 2r0)/(mu0/mu_inf - cosh 2r0)].
/// Throws DomainError naming the offending factor when the log argument is
/// not positive. For mu0 = mu_inf the bracket reduces to 2 identically.
DecoherenceTime decoherence_time(const DecoherenceParams& p);

/// Purity mu(t) of the damped squeezed mode.
double purity_at(const DecoherenceParams& p, double t);

struct SqueezingValue {
    double r;
    bool clamped;  ///< arccosh argument fell below 1 (full decay + roundoff)
};

/// Squeezing r(t) from cosh 2r(t) = mu(t) (e^{-gt} cosh 2r0 / mu0 + (1 - e^{-gt})/mu_inf).
SqueezingValue squeezing_at(const DecoherenceParams& p, double t);

struct OptimalTau {
    double tau_star;  // s
    bool at_bound;    ///< argmax pinned at a search boundary
    bool infeasible;  ///< 2 pi / Omega exceeded the upper search bound
};

/// Measurement duration maximizing the damped single-mode figure of merit
/// tau^4 e^{4 r0} e^{-2 gamma_B tau} over tau in [2 pi/Omega, 10/gamma_B],
/// by golden-section search on log tau after a coarse unimodality scan.
OptimalTau optimal_tau(const DecoherenceParams& p, const GwWaveform& wave);

/// Mode integral re-evaluated with per-mode damping: every mode carries its
/// own gamma_B(w), its squeezing decayed to r(tau), and its per-measurement
/// information multiplied by the purity mu(tau). This purity treatment is an
/// approximation and is flagged as such in emitted metadata downstream.
/// gamma_scale rescales all per-mode rates (0 recovers the undamped result).
SensitivityPoint decohered_sensitivity(const BecConfig& config, const GwWaveform& wave,
                                       const SqueezeParams& p0, const MeasurementPlan& plan,
                                       const DecoherenceParams& dec, double gamma_scale = 1.0);

}  // namespace becgw
