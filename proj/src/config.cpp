#include "becgw/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "becgw/csv.hpp"

namespace becgw {

namespace {

constexpr double kPi = 3.14159265358979323846;

class FieldReader {
public:
    explicit FieldReader(const YAML::Node& root) : root_(root) {}

    std::optional<double> number(const std::string& section, const std::string& key,
                                 bool required) {
        const YAML::Node node = lookup(section, key);
        if (!node || node.IsNull()) {
            if (required) violations.push_back("missing required field " + section + "." + key);
            return std::nullopt;
        }
        try {
            return node.as<double>();
        } catch (const YAML::Exception&) {
            violations.push_back("field " + section + "." + key + " must be a number");
            return std::nullopt;
        }
    }

    std::optional<int> integer(const std::string& section, const std::string& key,
                               bool required) {
        const YAML::Node node = lookup(section, key);
        if (!node || node.IsNull()) {
            if (required) violations.push_back("missing required field " + section + "." + key);
            return std::nullopt;
        }
        try {
            return node.as<int>();
        } catch (const YAML::Exception&) {
            violations.push_back("field " + section + "." + key + " must be an integer");
            return std::nullopt;
        }
    }

    std::optional<std::string> text(const std::string& section, const std::string& key) {
        const YAML::Node node = lookup(section, key);
        if (!node || node.IsNull()) return std::nullopt;
        try {
            return node.as<std::string>();
        } catch (const YAML::Exception&) {
            violations.push_back("field " + section + "." + key + " must be a string");
            return std::nullopt;
        }
    }

    std::vector<double> number_list(const std::string& section, const std::string& key) {
        const YAML::Node node = lookup(section, key);
        std::vector<double> out;
        if (!node || node.IsNull()) return out;
        if (!node.IsSequence()) {
            violations.push_back("field " + section + "." + key + " must be a list of numbers");
            return out;
        }
        for (const auto& item : node) {
            try {
                out.push_back(item.as<double>());
            } catch (const YAML::Exception&) {
                violations.push_back("field " + section + "." + key +
                                     " must contain only numbers");
                return {};
            }
        }
        return out;
    }

    bool has(const std::string& section, const std::string& key) {
        const YAML::Node node = lookup(section, key);
        return node && !node.IsNull();
    }

    std::vector<std::string> violations;

private:
    YAML::Node lookup(const std::string& section, const std::string& key) {
        if (!root_ || !root_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node sec = root_[section];
        if (!sec || !sec.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        return sec[key];
    }

    YAML::Node root_;
};

}  // namespace

std::vector<double> SweepSpec::grid() const {
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(f_start);
        return out;
    }
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        if (log_spacing) {
            out.push_back(f_start * std::pow(f_stop / f_start, t));
        } else {
            out.push_back(f_start + t * (f_stop - f_start));
        }
    }
    return out;
}

std::string ExperimentConfig::describe() const {
    std::ostringstream os;
    os << "bec.atom_mass = " << format_full_precision(bec.atom_mass) << " kg\n"
       << "bec.number_density = " << format_full_precision(bec.number_density) << " 1/m^3\n"
       << "bec.sound_speed = " << format_full_precision(bec.sound_speed) << " m/s\n"
       << "bec.box_length = " << format_full_precision(bec.box_length) << " m\n"
       << "constants.hbar = " << format_full_precision(bec.hbar) << " J s\n"
       << "constants.c = " << format_full_precision(bec.c_light) << " m/s\n"
       << "squeezing.r = " << format_full_precision(squeeze.r) << "\n"
       << "squeezing.phi = " << format_full_precision(squeeze.phi) << " rad\n"
       << "plan.tau = " << format_full_precision(plan.tau) << " s\n"
       << "plan.t_obs = " << format_full_precision(plan.t_obs) << " s\n"
       << "plan.n_becs = " << plan.n_becs << "\n"
       << "plan.measurements = " << format_full_precision(plan.measurement_count()) << "\n"
       << "decoherence.mu0 = " << format_full_precision(mu0) << "\n"
       << "decoherence.mu_inf = " << format_full_precision(mu_inf) << "\n"
       << "derived.chemical_potential_hz = "
       << format_full_precision(bec.chemical_potential_omega() / (2.0 * kPi)) << " Hz\n"
       << "sweep.f_start = " << format_full_precision(sweep.f_start) << " Hz\n"
       << "sweep.f_stop = " << format_full_precision(sweep.f_stop) << " Hz\n"
       << "sweep.points = " << sweep.points << "\n"
       << "sweep.spacing = " << (sweep.log_spacing ? "log" : "linear") << "\n";
    if (!sweep.r_values.empty()) {
        os << "sweep.r_values =";
        for (double r : sweep.r_values) os << " " << format_full_precision(r);
        os << "\n";
    }
    return os.str();
}

ExperimentConfig parse_config_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError({std::string("document parse error: ") + e.what()});
    }

    FieldReader in(root);

    const auto mass = in.number("bec", "atom_mass", true);
    const auto density = in.number("bec", "number_density", true);
    const auto cs = in.number("bec", "sound_speed", true);
    const auto length = in.number("bec", "box_length", true);
    const auto hbar = in.number("constants", "hbar", false);
    const auto c_light = in.number("constants", "c", false);

    const bool has_r = in.has("squeezing", "r");
    const bool has_db = in.has("squeezing", "db");
    std::optional<double> r_value;
    if (has_r && has_db) {
        in.violations.push_back("squeezing: provide exactly one of r and db, not both");
    } else if (!has_r && !has_db) {
        in.violations.push_back("missing required field squeezing.r (or squeezing.db)");
    } else if (has_r) {
        r_value = in.number("squeezing", "r", true);
    } else {
        const auto db = in.number("squeezing", "db", true);
        if (db) {
            try {
                r_value = db_to_r(*db);
            } catch (const Error& e) {
                in.violations.push_back(std::string("squeezing.db: ") + e.what());
            }
        }
    }
    const auto phi = in.number("squeezing", "phi", false);

    const auto tau = in.number("plan", "tau", true);
    const auto t_obs = in.number("plan", "t_obs", true);
    const auto n_becs = in.integer("plan", "n_becs", false);

    const auto mu0 = in.number("decoherence", "mu0", false);
    const auto mu_inf = in.number("decoherence", "mu_inf", false);

    const auto f_start = in.number("sweep", "f_start", true);
    const auto f_stop = in.number("sweep", "f_stop", true);
    const auto points = in.integer("sweep", "points", true);
    const auto spacing = in.text("sweep", "spacing");
    const auto r_values = in.number_list("sweep", "r_values");

    bool log_spacing = true;
    if (spacing) {
        if (*spacing == "log") log_spacing = true;
        else if (*spacing == "linear") log_spacing = false;
        else in.violations.push_back("sweep.spacing must be 'log' or 'linear'");
    }

    // Value-level checks, collected rather than thrown one at a time.
    if (f_start && f_stop && !(*f_start < *f_stop)) {
        in.violations.push_back("sweep: f_start must be < f_stop");
    }
    if (f_start && !(*f_start > 0.0)) in.violations.push_back("sweep.f_start must be > 0");
    if (points && *points < 1) in.violations.push_back("sweep.points must be >= 1");
    if (mu0 && !(*mu0 > 0.0 && *mu0 <= 1.0)) {
        in.violations.push_back("decoherence.mu0 must be in (0, 1]");
    }
    if (mu_inf && !(*mu_inf > 0.0 && *mu_inf <= 1.0)) {
        in.violations.push_back("decoherence.mu_inf must be in (0, 1]");
    }
    for (double r : r_values) {
        if (!(r >= 0.0)) {
            in.violations.push_back("sweep.r_values must be non-negative");
            break;
        }
    }

    BecConfig bec{};
    if (mass && density && cs && length) {
        bec.atom_mass = *mass;
        bec.number_density = *density;
        bec.sound_speed = *cs;
        bec.box_length = *length;
        if (hbar) bec.hbar = *hbar;
        if (c_light) bec.c_light = *c_light;
        try {
            bec.validate();
        } catch (const Error& e) {
            in.violations.push_back(e.what());
        }
    }

    std::optional<SqueezeParams> squeeze;
    if (r_value) {
        try {
            squeeze.emplace(*r_value, phi ? *phi : 0.5 * kPi);
        } catch (const Error& e) {
            in.violations.push_back(std::string("squeezing: ") + e.what());
        }
    }

    std::optional<MeasurementPlan> plan;
    if (tau && t_obs) {
        try {
            plan.emplace(*tau, *t_obs, n_becs ? *n_becs : 1);
        } catch (const Error& e) {
            in.violations.push_back(std::string("plan: ") + e.what());
        }
    }

    if (!in.violations.empty() || !squeeze || !plan) {
        if (in.violations.empty()) in.violations.push_back("configuration incomplete");
        throw ConfigError(in.violations);
    }

    SweepSpec sweep;
    sweep.f_start = *f_start;
    sweep.f_stop = *f_stop;
    sweep.points = *points;
    sweep.log_spacing = log_spacing;
    sweep.r_values = r_values;

    return ExperimentConfig(bec, *squeeze, *plan, mu0 ? *mu0 : 1.0, mu_inf ? *mu_inf : 1.0,
                            sweep);
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("parse_config: cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace becgw
