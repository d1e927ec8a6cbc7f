#include "thzcov/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "thzcov/errors.hpp"

namespace thzcov {

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::coverage_vs_beta: return "coverage_vs_beta";
        case Experiment::association_vs_lambda_w: return "association_vs_lambda_w";
        case Experiment::coverage_vs_density: return "coverage_vs_density";
        case Experiment::training_vs_array: return "training_vs_array";
        case Experiment::pe_distribution: return "pe_distribution";
        case Experiment::validate: return "validate";
    }
    return "?";
}

namespace {

Experiment experiment_from_name(const std::string& s) {
    for (Experiment e : {Experiment::coverage_vs_beta, Experiment::association_vs_lambda_w,
                         Experiment::coverage_vs_density, Experiment::training_vs_array,
                         Experiment::pe_distribution, Experiment::validate})
        if (experiment_name(e) == s) return e;
    throw ConfigError("experiment: unknown value '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (...) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": trailing characters in '" + v + "'");
    return x;
}

long parse_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (...) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": trailing characters in '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

SweepScale scale_from_name(const std::string& s) {
    if (s == "linear") return SweepScale::linear;
    if (s == "log") return SweepScale::log;
    if (s == "dB" || s == "db") return SweepScale::db;
    throw ConfigError("sweep.scale: unknown value '" + s + "' (linear|log|dB)");
}

const char* scale_name(SweepScale s) {
    switch (s) {
        case SweepScale::linear: return "linear";
        case SweepScale::log: return "log";
        case SweepScale::db: return "dB";
    }
    return "?";
}

struct KeyDoc {
    const char* key;
    const char* unit;
    const char* def;
    const char* desc;
};

constexpr KeyDoc KEY_DOCS[] = {
    {"h_a", "m", "3", "AP (ceiling) height"},
    {"h_u", "m", "1.3", "UE height"},
    {"h_b", "m", "1.7", "human body height"},
    {"r_b", "m", "0.25", "human body radius"},
    {"lambda_b", "m^-2", "0.1", "human density"},
    {"lambda_w", "m^-1", "0.02", "wall line density per axis"},
    {"d_ap", "m", "15", "inter-AP spacing"},
    {"r_a", "m", "15", "association/coverage radius"},
    {"n_a", "", "16", "AP array size per side"},
    {"n_u", "", "2", "UE array size per side"},
    {"f_hz", "Hz", "300e9", "carrier frequency"},
    {"b_hz", "Hz", "5e9", "bandwidth (documentation only)"},
    {"eps_f", "m^-1", "0.00143", "molecular absorption coefficient"},
    {"p_t_dbm", "dBm", "5", "transmit power"},
    {"n_0_dbm", "dBm", "-77", "noise power"},
    {"omega_t", "rad", "0.0554", "training beam half-width per axis"},
    {"n_rf", "", "6", "RF chains per AP"},
    {"beta_ct_db", "dB", "10", "beam-training SINR threshold"},
    {"topology", "", "square", "lattice for single-topology experiments (square|hexagonal|ppp)"},
    {"topologies", "", "square,hexagonal", "comma list evaluated by sweep experiments"},
    {"experiment", "", "coverage_vs_beta",
     "coverage_vs_beta|association_vs_lambda_w|coverage_vs_density|training_vs_array|"
     "pe_distribution|validate"},
    {"locations", "", "1,2,3", "representative UE locations (1=under AP, 3=cell corner)"},
    {"sweep.name", "", "(per experiment)", "swept variable name"},
    {"sweep.start", "", "(per experiment)", "first sweep value"},
    {"sweep.stop", "", "(per experiment)", "last sweep value"},
    {"sweep.n", "", "(per experiment)", "number of sweep points"},
    {"sweep.scale", "", "(per experiment)", "linear|log|dB"},
    {"density.beta_db", "dB", "20", "SINR threshold for the density sweep"},
    {"sim.n_trials", "", "100000", "Monte Carlo trials per point"},
    {"sim.seed", "", "1", "root seed of the counter-based streams"},
    {"sim.pe_model", "", "gaussian", "pointing-loss model (gaussian|array_factor)"},
    {"sim.human_model", "", "independent",
     "per-link independent human blockage, or shared scene centers (independent|scene)"},
    {"sim.threads", "", "0", "worker threads; 0 = hardware"},
    {"sidelobe.phi_scale", "", "1.0", "cone-model mainlobe beamwidth as a multiple of 1.06/n"},
    {"truncation.epsilon", "W", "1e-15", "lattice-sum tail bound target"},
    {"beamtrain.kappa", "", "0", ">0 ties omega_t = kappa*1.06/n_a in array sweeps"},
    {"beamtrain.n_ct", "", "0", ">0 overrides the concurrent-beam count"},
    {"beamtrain.inter", "", "approx",
     "inter-AP interference in the training budget (approx|exact|exact_bare)"},
    {"quad.n", "", "1024", "quadrature nodes for location-averaged coverage"},
    {"validate.tolerance", "", "0.03", "absolute analytic-vs-simulated pass threshold"},
    {"output.path", "", "results.csv", "output CSV path (written atomically)"},
    {"output.json_sidecar", "", "false", "also write <path>.json with the same rows"},
};

void apply_experiment_sweep_defaults(RunConfig& cfg) {
    if (cfg.sweep.explicit_spec) return;
    switch (cfg.experiment) {
        case Experiment::coverage_vs_beta:
        case Experiment::validate:
            cfg.sweep = {"beta_db", -10.0, 40.0, 11, SweepScale::db, false};
            break;
        case Experiment::association_vs_lambda_w:
            cfg.sweep = {"lambda_w", 0.01, 0.1, 10, SweepScale::linear, false};
            break;
        case Experiment::coverage_vs_density:
            cfg.sweep = {"lambda_a", 0.002, 0.064, 6, SweepScale::log, false};
            break;
        case Experiment::training_vs_array:
            cfg.sweep = {"n_a", 4.0, 64.0, 16, SweepScale::linear, false};
            break;
        case Experiment::pe_distribution:
            cfg.sweep = {"h", 0.0, 1.0, 40, SweepScale::linear, false};
            break;
    }
}

} // namespace

std::vector<double> sweep_values(const SweepSpec& s) {
    if (s.n < 1) throw ConfigError("sweep.n: must be >= 1");
    std::vector<double> out;
    out.reserve(s.n);
    if (s.n == 1) {
        out.push_back(s.start);
        return out;
    }
    if (s.scale == SweepScale::log) {
        if (s.start <= 0.0 || s.stop <= 0.0)
            throw ConfigError("sweep.start/sweep.stop: log scale requires positive bounds");
        const double ratio = std::pow(s.stop / s.start, 1.0 / (s.n - 1));
        double v = s.start;
        for (int i = 0; i < s.n; ++i, v *= ratio) out.push_back(v);
        out.back() = s.stop;
    } else {
        const double step = (s.stop - s.start) / (s.n - 1);
        for (int i = 0; i < s.n; ++i) out.push_back(s.start + i * step);
        out.back() = s.stop;
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    double p_t_dbm = 5.0, n_0_dbm = -77.0, beta_ct_db = 10.0;

    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key)) throw ConfigError(key + ": duplicate key");
        kv[key] = val;
    }

    auto take = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    if (auto* v = take("h_a")) cfg.params.h_a = parse_double("h_a", *v);
    if (auto* v = take("h_u")) cfg.params.h_u = parse_double("h_u", *v);
    if (auto* v = take("h_b")) cfg.params.h_b = parse_double("h_b", *v);
    if (auto* v = take("r_b")) cfg.params.r_b = parse_double("r_b", *v);
    if (auto* v = take("lambda_b")) cfg.params.lambda_b = parse_double("lambda_b", *v);
    if (auto* v = take("lambda_w")) cfg.params.lambda_w = parse_double("lambda_w", *v);
    if (auto* v = take("d_ap")) cfg.params.d_ap = parse_double("d_ap", *v);
    if (auto* v = take("r_a")) cfg.params.r_a = parse_double("r_a", *v);
    if (auto* v = take("n_a")) cfg.params.n_a = static_cast<int>(parse_long("n_a", *v));
    if (auto* v = take("n_u")) cfg.params.n_u = static_cast<int>(parse_long("n_u", *v));
    if (auto* v = take("f_hz")) cfg.params.f = parse_double("f_hz", *v);
    if (auto* v = take("b_hz")) cfg.params.b = parse_double("b_hz", *v);
    if (auto* v = take("eps_f")) cfg.params.eps_f = parse_double("eps_f", *v);
    if (auto* v = take("p_t_dbm")) p_t_dbm = parse_double("p_t_dbm", *v);
    if (auto* v = take("n_0_dbm")) n_0_dbm = parse_double("n_0_dbm", *v);
    if (auto* v = take("omega_t")) cfg.params.omega_t = parse_double("omega_t", *v);
    if (auto* v = take("n_rf")) cfg.params.n_rf = static_cast<int>(parse_long("n_rf", *v));
    if (auto* v = take("beta_ct_db")) beta_ct_db = parse_double("beta_ct_db", *v);
    cfg.params.p_t = dbm_to_watts(p_t_dbm);
    cfg.params.n_0 = dbm_to_watts(n_0_dbm);
    cfg.params.beta_ct = db_to_linear(beta_ct_db);

    if (auto* v = take("topology")) {
        try {
            cfg.params.topology = topology_from_name(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("topology: ") + e.what());
        }
    }
    if (auto* v = take("topologies")) {
        cfg.topologies.clear();
        for (const std::string& t : split_list(*v)) {
            try {
                cfg.topologies.push_back(topology_from_name(t));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("topologies: ") + e.what());
            }
        }
        if (cfg.topologies.empty()) throw ConfigError("topologies: empty list");
    }
    if (auto* v = take("experiment")) cfg.experiment = experiment_from_name(*v);
    if (auto* v = take("locations")) {
        cfg.locations.clear();
        for (const std::string& s : split_list(*v)) {
            const long loc = parse_long("locations", s);
            if (loc < 1 || loc > 3) throw ConfigError("locations: entries must be 1, 2 or 3");
            cfg.locations.push_back(static_cast<int>(loc));
        }
        if (cfg.locations.empty()) throw ConfigError("locations: empty list");
    }

    bool sweep_explicit = false;
    if (auto* v = take("sweep.name")) {
        cfg.sweep.name = *v;
        sweep_explicit = true;
    }
    if (auto* v = take("sweep.start")) {
        cfg.sweep.start = parse_double("sweep.start", *v);
        sweep_explicit = true;
    }
    if (auto* v = take("sweep.stop")) {
        cfg.sweep.stop = parse_double("sweep.stop", *v);
        sweep_explicit = true;
    }
    if (auto* v = take("sweep.n")) {
        cfg.sweep.n = static_cast<int>(parse_long("sweep.n", *v));
        sweep_explicit = true;
    }
    if (auto* v = take("sweep.scale")) {
        cfg.sweep.scale = scale_from_name(*v);
        sweep_explicit = true;
    }
    cfg.sweep.explicit_spec = sweep_explicit;
    apply_experiment_sweep_defaults(cfg);
    if (cfg.sweep.name.empty()) apply_experiment_sweep_defaults(cfg);

    if (auto* v = take("density.beta_db")) cfg.density_beta_db = parse_double("density.beta_db", *v);

    if (auto* v = take("sim.n_trials")) cfg.n_trials = parse_long("sim.n_trials", *v);
    if (auto* v = take("sim.seed")) cfg.seed = static_cast<std::uint64_t>(parse_long("sim.seed", *v));
    if (auto* v = take("sim.pe_model")) {
        if (*v == "gaussian") cfg.pe_model = PeModel::gaussian;
        else if (*v == "array_factor") cfg.pe_model = PeModel::array_factor;
        else throw ConfigError("sim.pe_model: unknown value '" + *v + "'");
    }
    if (auto* v = take("sim.human_model")) {
        if (*v == "independent") cfg.human_model = HumanModel::independent;
        else if (*v == "scene") cfg.human_model = HumanModel::scene;
        else throw ConfigError("sim.human_model: unknown value '" + *v + "'");
    }
    if (auto* v = take("sim.threads")) cfg.threads = static_cast<int>(parse_long("sim.threads", *v));

    if (auto* v = take("sidelobe.phi_scale")) cfg.phi_scale = parse_double("sidelobe.phi_scale", *v);
    if (auto* v = take("truncation.epsilon")) cfg.trunc_epsilon = parse_double("truncation.epsilon", *v);

    if (auto* v = take("beamtrain.kappa")) cfg.kappa = parse_double("beamtrain.kappa", *v);
    if (auto* v = take("beamtrain.n_ct")) cfg.n_ct_override = static_cast<int>(parse_long("beamtrain.n_ct", *v));
    if (auto* v = take("beamtrain.inter")) {
        if (*v == "approx") cfg.inter_mode = InterMode::approx;
        else if (*v == "exact") cfg.inter_mode = InterMode::exact;
        else if (*v == "exact_bare") cfg.inter_mode = InterMode::exact_bare;
        else throw ConfigError("beamtrain.inter: unknown value '" + *v + "'");
    }

    if (auto* v = take("quad.n")) cfg.quad_n = static_cast<int>(parse_long("quad.n", *v));
    if (auto* v = take("validate.tolerance")) cfg.validate_tolerance = parse_double("validate.tolerance", *v);
    if (auto* v = take("output.path")) cfg.out_path = *v;
    if (auto* v = take("output.json_sidecar")) cfg.json_sidecar = parse_bool("output.json_sidecar", *v);

    // Reject anything the schema does not know.
    for (const auto& [key, _] : kv) {
        const bool known = std::any_of(std::begin(KEY_DOCS), std::end(KEY_DOCS),
                                       [&](const KeyDoc& d) { return key == d.key; });
        if (!known) throw ConfigError("unknown key '" + key + "'");
    }

    try {
        validate(cfg.params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.n_trials < 1000 &&
        (cfg.experiment == Experiment::validate)) {
        throw ConfigError("sim.n_trials: validate requires at least 1000 trials");
    }
    if (cfg.n_trials < 1) throw ConfigError("sim.n_trials: must be >= 1");
    if (cfg.quad_n < 16) throw ConfigError("quad.n: must be >= 16");
    if (cfg.phi_scale <= 0) throw ConfigError("sidelobe.phi_scale: must be > 0");
    if (cfg.trunc_epsilon <= 0) throw ConfigError("truncation.epsilon: must be > 0");
    if (cfg.validate_tolerance <= 0) throw ConfigError("validate.tolerance: must be > 0");
    if (cfg.sweep.n < 1) throw ConfigError("sweep.n: must be >= 1");
    sweep_values(cfg.sweep); // bounds check for log scale
    return cfg;
}

namespace {
std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string render_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "h_a = " << fmt_g(cfg.params.h_a) << "\n";
    os << "h_u = " << fmt_g(cfg.params.h_u) << "\n";
    os << "h_b = " << fmt_g(cfg.params.h_b) << "\n";
    os << "r_b = " << fmt_g(cfg.params.r_b) << "\n";
    os << "lambda_b = " << fmt_g(cfg.params.lambda_b) << "\n";
    os << "lambda_w = " << fmt_g(cfg.params.lambda_w) << "\n";
    os << "d_ap = " << fmt_g(cfg.params.d_ap) << "\n";
    os << "r_a = " << fmt_g(cfg.params.r_a) << "\n";
    os << "n_a = " << cfg.params.n_a << "\n";
    os << "n_u = " << cfg.params.n_u << "\n";
    os << "f_hz = " << fmt_g(cfg.params.f) << "\n";
    os << "b_hz = " << fmt_g(cfg.params.b) << "\n";
    os << "eps_f = " << fmt_g(cfg.params.eps_f) << "\n";
    os << "p_t_dbm = " << fmt_g(watts_to_dbm(cfg.params.p_t)) << "\n";
    os << "n_0_dbm = " << fmt_g(watts_to_dbm(cfg.params.n_0)) << "\n";
    os << "omega_t = " << fmt_g(cfg.params.omega_t) << "\n";
    os << "n_rf = " << cfg.params.n_rf << "\n";
    os << "beta_ct_db = " << fmt_g(linear_to_db(cfg.params.beta_ct)) << "\n";
    os << "topology = " << topology_name(cfg.params.topology) << "\n";
    os << "topologies = ";
    for (std::size_t i = 0; i < cfg.topologies.size(); ++i)
        os << (i ? "," : "") << topology_name(cfg.topologies[i]);
    os << "\n";
    os << "experiment = " << experiment_name(cfg.experiment) << "\n";
    os << "locations = ";
    for (std::size_t i = 0; i < cfg.locations.size(); ++i) os << (i ? "," : "") << cfg.locations[i];
    os << "\n";
    os << "sweep.name = " << cfg.sweep.name << "\n";
    os << "sweep.start = " << fmt_g(cfg.sweep.start) << "\n";
    os << "sweep.stop = " << fmt_g(cfg.sweep.stop) << "\n";
    os << "sweep.n = " << cfg.sweep.n << "\n";
    os << "sweep.scale = " << scale_name(cfg.sweep.scale) << "\n";
    os << "density.beta_db = " << fmt_g(cfg.density_beta_db) << "\n";
    os << "sim.n_trials = " << cfg.n_trials << "\n";
    os << "sim.seed = " << cfg.seed << "\n";
    os << "sim.pe_model = " << (cfg.pe_model == PeModel::gaussian ? "gaussian" : "array_factor")
       << "\n";
    os << "sim.human_model = "
       << (cfg.human_model == HumanModel::independent ? "independent" : "scene") << "\n";
    os << "sim.threads = " << cfg.threads << "\n";
    os << "sidelobe.phi_scale = " << fmt_g(cfg.phi_scale) << "\n";
    os << "truncation.epsilon = " << fmt_g(cfg.trunc_epsilon) << "\n";
    os << "beamtrain.kappa = " << fmt_g(cfg.kappa) << "\n";
    os << "beamtrain.n_ct = " << cfg.n_ct_override << "\n";
    os << "beamtrain.inter = "
       << (cfg.inter_mode == InterMode::approx
               ? "approx"
               : (cfg.inter_mode == InterMode::exact ? "exact" : "exact_bare"))
       << "\n";
    os << "quad.n = " << cfg.quad_n << "\n";
    os << "validate.tolerance = " << fmt_g(cfg.validate_tolerance) << "\n";
    os << "output.path = " << cfg.out_path << "\n";
    os << "output.json_sidecar = " << (cfg.json_sidecar ? "true" : "false") << "\n";
    return os.str();
}

std::string config_key_reference() {
    std::ostringstream os;
    os << "Config keys (key = value per line, '#' comments):\n";
    for (const KeyDoc& d : KEY_DOCS) {
        os << "  " << d.key;
        if (d.unit[0]) os << " [" << d.unit << "]";
        os << " (default " << d.def << "): " << d.desc << "\n";
    }
    return os.str();
}

} // namespace thzcov
