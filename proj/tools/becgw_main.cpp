// becgw: strain-sensitivity calculator for a squeezed-phonon BEC
// gravitational-wave detector. Subcommands compute Bogoliubov coefficients,
// quantum Fisher information, sensitivity points and sweeps, decoherence
// figures of merit, and regenerate the standard figures as CSV + plot script.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "becgw/config.hpp"
#include "becgw/csv.hpp"
#include "becgw/decoherence.hpp"
#include "becgw/version.hpp"

namespace fs = std::filesystem;
using namespace becgw;

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    double f_hz = 0.0;
    bool f_given = false;
    bool no_metadata = false;
};

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

/// Locate a repository asset (preset or data file) from the working directory
/// or relative to the executable, so the tool works from the build tree.
std::optional<std::string> find_asset(const std::string& relative) {
    std::vector<fs::path> candidates;
    candidates.emplace_back(relative);
    std::error_code ec;
    const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const fs::path dir = exe.parent_path();
        candidates.push_back(dir / relative);
        candidates.push_back(dir / ".." / relative);
        candidates.push_back(dir / ".." / ".." / relative);
    }
    for (const auto& c : candidates) {
        if (fs::exists(c, ec)) return c.string();
    }
    return std::nullopt;
}

std::vector<std::string> base_metadata(const std::string& subcommand, const CommonOpts& opts,
                                       const ExperimentConfig& cfg) {
    std::vector<std::string> meta;
    meta.push_back(std::string("becgw ") + kVersion);
    meta.push_back("generated_at = " + timestamp_utc());
    meta.push_back("subcommand = " + subcommand);
    if (!opts.config_path.empty()) meta.push_back("config = " + opts.config_path);
    meta.push_back("r = " + format_full_precision(cfg.squeeze.r));
    meta.push_back("phi = " + format_full_precision(cfg.squeeze.phi));
    meta.push_back("tau = " + format_full_precision(cfg.plan.tau));
    meta.push_back("t_obs = " + format_full_precision(cfg.plan.t_obs));
    meta.push_back("n_becs = " + std::to_string(cfg.plan.n_becs));
    meta.push_back("box_length = " + format_full_precision(cfg.bec.box_length));
    meta.push_back("sound_speed = " + format_full_precision(cfg.bec.sound_speed));
    return meta;
}

void deliver(const CsvDocument& doc, const CommonOpts& opts) {
    if (opts.out_path.empty()) {
        std::cout << render_csv(doc, !opts.no_metadata);
    } else {
        emit_csv(doc, opts.out_path, !opts.no_metadata);
    }
}

/// Data-plus-script output: a generic matplotlib script that re-reads the CSV.
void write_plot_script(const std::string& csv_path) {
    const fs::path p(csv_path);
    fs::path script = p;
    script.replace_extension("");
    script += "_plot.py";
    std::ofstream out(script);
    if (!out) throw IoError("cannot write plot script: " + script.string());
    out << "#!/usr/bin/env python3\n"
           "\"\"\"Plots curve_value vs f_gw from the CSV next to this script.\"\"\"\n"
           "import csv\n"
           "import sys\n"
           "from collections import defaultdict\n"
           "import matplotlib.pyplot as plt\n"
           "\n"
           "path = sys.argv[1] if len(sys.argv) > 1 else "
        << "\"" << p.filename().string() << "\"\n"
        << "rows = []\n"
           "with open(path) as fh:\n"
           "    for line in fh:\n"
           "        if line.startswith('#') or not line.strip():\n"
           "            continue\n"
           "        rows.append(line.strip().split(','))\n"
           "header, data = rows[0], rows[1:]\n"
           "col = {name: i for i, name in enumerate(header)}\n"
           "group_keys = [k for k in ('r', 'box_length', 'variant') if k in col]\n"
           "series = defaultdict(list)\n"
           "for row in data:\n"
           "    key = tuple(row[col[k]] for k in group_keys)\n"
           "    series[key].append((float(row[col['f_gw']]), float(row[col['curve_value']])))\n"
           "for key, pts in sorted(series.items()):\n"
           "    pts.sort()\n"
           "    label = ', '.join(f'{k}={v}' for k, v in zip(group_keys, key)) or 'curve'\n"
           "    plt.loglog([p[0] for p in pts], [p[1] for p in pts], label=label)\n"
           "if 'aligo_curve' in col:\n"
           "    ref = [(float(r[col['f_gw']]), float(r[col['aligo_curve']])) for r in data\n"
           "           if r[col['aligo_curve']] != 'nan']\n"
           "    ref = sorted(set(ref))\n"
           "    if ref:\n"
           "        plt.loglog([p[0] for p in ref], [p[1] for p in ref], 'b-', lw=3,\n"
           "                   label='aLIGO design')\n"
           "plt.xlabel('f [Hz]')\n"
           "plt.ylabel('strain sensitivity [Hz$^{-1/2}$]')\n"
           "plt.legend()\n"
           "plt.tight_layout()\n"
           "plt.savefig(path.rsplit('.', 1)[0] + '.png', dpi=150)\n";
}

ExperimentConfig load_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) {
        throw ConfigError({"--config PATH is required for this subcommand"});
    }
    return parse_config(opts.config_path);
}

double pick_frequency(const CommonOpts& opts, const ExperimentConfig& cfg) {
    return opts.f_given ? opts.f_hz : cfg.sweep.f_start;
}

int run_validate(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    std::cout << cfg.describe();
    return kExitOk;
}

int run_bogoliubov(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    const double f = pick_frequency(opts, cfg);
    const double omega = kPi * f;  // resonant phonon at half the wave frequency
    const double g = beta_coefficient(omega, 2.0 * kPi * f, cfg.plan.tau);

    CsvDocument doc;
    doc.metadata = base_metadata("bogoliubov", opts, cfg);
    doc.metadata.push_back("mode = resonant, k along x, projection factor 1");
    doc.header = {"f_gw", "omega_phonon", "alpha", "beta_per_unit_strain", "quanta_per_strain_sq"};
    doc.rows.push_back({f, omega, 1.0, g, g * g});
    deliver(doc, opts);
    return kExitOk;
}

int run_qfi(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    const double f = pick_frequency(opts, cfg);
    const double omega = kPi * f;
    const double g = beta_coefficient(omega, 2.0 * kPi * f, cfg.plan.tau);

    const CovMatrix2 sigma0 = squeezed_cov(cfg.squeeze);
    const CovExpansion ex = expand_transform_cov(sigma0, {g, 0.0});
    const QfiResult pert = qfi_perturbative(ex.sigma0, ex.sigma1, ex.sigma2);
    const QfiResult fd = qfi_finite_difference(
        [&](double eps) {
            return transform_cov(sigma0, BogoliubovPair{{1.0, 0.0}, {g * eps, 0.0}});
        },
        1e-4);

    CsvDocument doc;
    doc.metadata = base_metadata("qfi", opts, cfg);
    doc.metadata.push_back("h is information per unit effective strain squared, per measurement");
    doc.header = {"f_gw", "omega_phonon", "h_perturbative", "h_finite_difference", "r_factor"};
    doc.rows.push_back({f, omega, pert.h_eps, fd.h_eps, r_factor(cfg.squeeze)});
    deliver(doc, opts);
    return kExitOk;
}

int run_sensitivity(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    const double f = pick_frequency(opts, cfg);
    const GwWaveform wave(0.0, 2.0 * kPi * f, cfg.plan.tau);
    const SensitivityPoint pt = total_sensitivity(cfg.bec, wave, cfg.squeeze, cfg.plan);

    CsvDocument doc;
    doc.metadata = base_metadata("sensitivity", opts, cfg);
    doc.metadata.push_back("plotted_quantity = sqrt(delta_eps_sq/f)");
    doc.header = {"f_gw", "delta_eps_sq", "curve_value", "dispersion_valid"};
    doc.rows.push_back({pt.f_gw, pt.delta_eps_sq, pt.curve_value, pt.dispersion_valid ? 1.0 : 0.0});
    deliver(doc, opts);
    return kExitOk;
}

int run_decoherence(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    const double f = pick_frequency(opts, cfg);
    const double omega = kPi * f;
    const double gamma = beliaev_rate(cfg.bec, omega);
    const DecoherenceParams dec(cfg.squeeze.r, cfg.mu0, cfg.mu_inf, gamma);
    const GwWaveform wave(0.0, 2.0 * kPi * f, cfg.plan.tau);

    const DecoherenceTime td = decoherence_time(dec);
    const OptimalTau opt = optimal_tau(dec, wave);
    const double r_at = squeezing_at(dec, opt.tau_star).r;
    const double mu_at = purity_at(dec, opt.tau_star);
    const SensitivityPoint pt = decohered_sensitivity(cfg.bec, wave, cfg.squeeze, cfg.plan, dec);

    CsvDocument doc;
    doc.metadata = base_metadata("decoherence", opts, cfg);
    doc.metadata.push_back("approximation = purity multiplies the per-measurement information");
    doc.metadata.push_back("decohered point evaluated at plan.tau; tau_star is the recommended duration");
    doc.header = {"f_gw",    "omega_phonon", "gamma_b",      "inv_gamma_b",
                  "t_d",     "tau_star",     "r_at_tau_star", "mu_at_tau_star",
                  "delta_eps_sq", "curve_value"};
    doc.rows.push_back({f, omega, gamma, gamma > 0 ? 1.0 / gamma : 0.0, td.t_d, opt.tau_star,
                        r_at, mu_at, pt.delta_eps_sq, pt.curve_value});
    deliver(doc, opts);
    return kExitOk;
}

int run_sweep(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts);
    const std::vector<double> grid = cfg.sweep.grid();

    std::vector<double> r_list = cfg.sweep.r_values;
    if (r_list.empty()) r_list.push_back(cfg.squeeze.r);

    CsvDocument doc;
    doc.metadata = base_metadata("sweep", opts, cfg);
    doc.metadata.push_back("plotted_quantity = sqrt(delta_eps_sq/f)");
    doc.header = {"f_gw", "r", "delta_eps_sq", "curve_value", "dispersion_valid"};
    for (double r : r_list) {
        const SqueezeParams p(r, cfg.squeeze.phi);
        const SweepOutput out = sweep_curve(cfg.bec, p, cfg.plan, grid);
        for (const auto& [idx, msg] : out.errors) {
            std::cerr << "sweep: point " << idx << " failed: " << msg << "\n";
        }
        for (const auto& pt : out.points) {
            doc.rows.push_back(
                {pt.f_gw, r, pt.delta_eps_sq, pt.curve_value, pt.dispersion_valid ? 1.0 : 0.0});
        }
    }
    deliver(doc, opts);
    if (!opts.out_path.empty()) write_plot_script(opts.out_path);
    return kExitOk;
}

ExperimentConfig load_figure_config(const CommonOpts& opts, const std::string& fig_id) {
    if (!opts.config_path.empty()) return parse_config(opts.config_path);
    const std::string rel = "presets/figure" + fig_id + ".yaml";
    const auto found = find_asset(rel);
    if (!found) throw IoError("figure preset not found: " + rel + " (pass --config PATH)");
    return parse_config(*found);
}

std::optional<ComparisonCurve> load_aligo() {
    const auto found = find_asset("data/aligo_design.csv");
    if (!found) return std::nullopt;
    return load_comparison_curve(*found);
}

int run_figure(const CommonOpts& opts, const std::string& fig_id) {
    const ExperimentConfig cfg = load_figure_config(opts, fig_id);
    const std::vector<double> grid = cfg.sweep.grid();
    const std::optional<ComparisonCurve> aligo = load_aligo();

    CsvDocument doc;
    doc.metadata = base_metadata("figure " + fig_id, opts, cfg);
    doc.metadata.push_back("plotted_quantity = sqrt(delta_eps_sq/f)");
    if (aligo) doc.metadata.push_back("comparison_curve = " + aligo->label);

    auto aligo_at = [&](double f) {
        return aligo ? aligo->interpolate(f) : std::numeric_limits<double>::quiet_NaN();
    };

    if (fig_id == "1") {
        doc.header = {"f_gw", "delta_eps_sq", "curve_value", "dispersion_valid", "aligo_curve"};
        const SweepOutput out = sweep_curve(cfg.bec, cfg.squeeze, cfg.plan, grid);
        for (const auto& pt : out.points) {
            doc.rows.push_back({pt.f_gw, pt.delta_eps_sq, pt.curve_value,
                                pt.dispersion_valid ? 1.0 : 0.0, aligo_at(pt.f_gw)});
        }
    } else if (fig_id == "2a" || fig_id == "2b") {
        doc.header = {"f_gw", "r", "delta_eps_sq", "curve_value", "dispersion_valid",
                      "aligo_curve"};
        std::vector<double> r_list = cfg.sweep.r_values;
        if (r_list.empty()) r_list.push_back(cfg.squeeze.r);
        for (double r : r_list) {
            const SqueezeParams p(r, cfg.squeeze.phi);
            const SweepOutput out = sweep_curve(cfg.bec, p, cfg.plan, grid);
            for (const auto& pt : out.points) {
                doc.rows.push_back({pt.f_gw, r, pt.delta_eps_sq, pt.curve_value,
                                    pt.dispersion_valid ? 1.0 : 0.0, aligo_at(pt.f_gw)});
            }
        }
    } else if (fig_id == "3") {
        doc.metadata.push_back("approximation = purity multiplies the per-measurement information");
        doc.metadata.push_back("variant 0: tau optimized, r0 = squeezing ceiling, Beliaev-damped");
        doc.metadata.push_back("variant 1: fixed r = 10, tau from the preset plan, undamped");
        doc.header = {"f_gw",        "box_length", "variant",      "tau_used", "r_used",
                      "delta_eps_sq", "curve_value", "dispersion_valid", "aligo_curve"};
        const std::vector<double> lengths = {cfg.bec.box_length, 1.0};
        for (double length : lengths) {
            BecConfig bec = cfg.bec;
            bec.box_length = length;
            for (double f : grid) {
                const double omega = kPi * f;
                const double gamma = beliaev_rate(bec, omega);
                const double r0 = max_squeezing(bec, omega).r_max;
                GwWaveform probe(0.0, 2.0 * kPi * f, cfg.plan.tau);
                const DecoherenceParams dec(r0, cfg.mu0, cfg.mu_inf, gamma);
                const OptimalTau opt = optimal_tau(dec, probe);
                const double tau_used =
                    std::min(std::max(opt.tau_star, 2.0 * kPi / probe.omega_gw), cfg.plan.t_obs);
                const MeasurementPlan plan(tau_used, cfg.plan.t_obs, cfg.plan.n_becs);
                const GwWaveform wave(0.0, 2.0 * kPi * f, tau_used);
                const SqueezeParams p0(r0, cfg.squeeze.phi);
                const SensitivityPoint pt =
                    decohered_sensitivity(bec, wave, p0, plan, dec);
                doc.rows.push_back({f, length, 0.0, tau_used, r0, pt.delta_eps_sq,
                                    pt.curve_value, pt.dispersion_valid ? 1.0 : 0.0,
                                    aligo_at(f)});
            }
            for (double f : grid) {
                const SqueezeParams p10(10.0, cfg.squeeze.phi);
                const GwWaveform wave(0.0, 2.0 * kPi * f, cfg.plan.tau);
                const SensitivityPoint pt = total_sensitivity(bec, wave, p10, cfg.plan);
                doc.rows.push_back({f, length, 1.0, cfg.plan.tau, 10.0, pt.delta_eps_sq,
                                    pt.curve_value, pt.dispersion_valid ? 1.0 : 0.0,
                                    aligo_at(f)});
            }
        }
    } else {
        throw ConfigError({"unknown figure id '" + fig_id + "' (expected 1, 2a, 2b, or 3)"});
    }

    deliver(doc, opts);
    if (!opts.out_path.empty()) write_plot_script(opts.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strain-sensitivity toolkit for a squeezed-phonon BEC "
                 "gravitational-wave detector"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string fig_id = "1";

    auto add_common = [&](CLI::App* sub, bool with_f) {
        sub->add_option("--config", opts.config_path, "configuration file (YAML or JSON)");
        sub->add_option("--out", opts.out_path, "output CSV path (stdout when omitted)");
        sub->add_flag("--no-metadata", opts.no_metadata, "suppress '#' metadata lines");
        if (with_f) {
            sub->add_option("--f", opts.f_hz, "gravitational-wave frequency in Hz")
                ->check(CLI::PositiveNumber)
                ->each([&](const std::string&) { opts.f_given = true; });
        }
    };

    add_common(app.add_subcommand("bogoliubov", "Bogoliubov coefficients of the resonant mode"),
               true);
    add_common(app.add_subcommand("qfi", "quantum Fisher information of the resonant mode"),
               true);
    add_common(app.add_subcommand("sensitivity", "total sensitivity at one frequency"), true);
    add_common(app.add_subcommand("decoherence", "Beliaev-damping figures at one frequency"),
               true);
    add_common(app.add_subcommand("sweep", "sensitivity curve over the configured grid"), false);
    CLI::App* fig = app.add_subcommand("figure", "regenerate a standard figure's data");
    fig->add_option("--id", fig_id, "figure id: 1, 2a, 2b, or 3");
    add_common(fig, false);
    add_common(app.add_subcommand("validate", "parse the config and echo resolved parameters"),
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand("validate")) return run_validate(opts);
        if (app.got_subcommand("bogoliubov")) return run_bogoliubov(opts);
        if (app.got_subcommand("qfi")) return run_qfi(opts);
        if (app.got_subcommand("sensitivity")) return run_sensitivity(opts);
        if (app.got_subcommand("decoherence")) return run_decoherence(opts);
        if (app.got_subcommand("sweep")) return run_sweep(opts);
        if (app.got_subcommand("figure")) return run_figure(opts, fig_id);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
