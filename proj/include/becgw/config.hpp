#pragma once

#include <string>
#include <vector>

#include "becgw/decoherence.hpp"
#include "becgw/gaussian_metrology.hpp"
#include "becgw/sensitivity.hpp"

namespace becgw {

/// Frequency grid specification for sweeps and figure regeneration.
struct SweepSpec {
    double f_start;  // Hz
    double f_stop;   // Hz
    int points;
    bool log_spacing = true;
    /// Optional squeezing overlay: when non-empty, the sweep is repeated once
    /// per r value (used by the squeezing-comparison figures).
    std::vector<double> r_values;

    std::vector<double> grid() const;
};

/// Fully resolved experiment description, as parsed and validated from a
/// YAML or JSON document.
struct ExperimentConfig {
    BecConfig bec;
    SqueezeParams squeeze;
    MeasurementPlan plan;
    double mu0 = 1.0;
    double mu_inf = 1.0;
    SweepSpec sweep;

    ExperimentConfig(BecConfig b, SqueezeParams s, MeasurementPlan pl, double m0, double mi,
                     SweepSpec sw)
        : bec(b), squeeze(s), plan(pl), mu0(m0), mu_inf(mi), sweep(sw) {}

    /// Human-readable echo of every resolved parameter (used by `validate`).
    std::string describe() const;
};

/// Parses and validates a configuration document. The format is a key tree
/// (YAML; JSON is a subset and parses through the same path):
///
///   bec:        {atom_mass, number_density, sound_speed, box_length}
///   squeezing:  {r | db, phi?}          (exactly one of r/db; phi defaults to pi/2)
///   plan:       {tau, t_obs, n_becs?}   (n_becs defaults to 1)
///   decoherence:{mu0?, mu_inf?}         (default 1)
///   sweep:      {f_start, f_stop, points, spacing?, r_values?}
///   constants:  {hbar?, c?}             (CODATA defaults)
///
/// Every violation is collected; the thrown ConfigError lists all of them.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace becgw
