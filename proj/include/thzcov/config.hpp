#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "thzcov/beamtrain.hpp"
#include "thzcov/params.hpp"
#include "thzcov/simulate.hpp"

namespace thzcov {

enum class Experiment {
    coverage_vs_beta,
    association_vs_lambda_w,
    coverage_vs_density,
    training_vs_array,
    pe_distribution,
    validate,
};

std::string experiment_name(Experiment e);

enum class SweepScale { linear, log, db };

struct SweepSpec {
    std::string name;   // swept variable; defaults to the experiment's axis
    double start = -10.0;
    double stop = 40.0;
    int n = 11;
    SweepScale scale = SweepScale::db;
    bool explicit_spec = false; // true when any sweep.* key appeared in the config
};

// Fully resolved run description. Defaults reproduce the reference system
// settings; dBm/dB keys are converted to linear once at parse time.
struct RunConfig {
    SystemParams params;
    Experiment experiment = Experiment::coverage_vs_beta;
    std::vector<Topology> topologies = {Topology::square, Topology::hexagonal};
    std::vector<int> locations = {1, 2, 3};
    SweepSpec sweep;
    double density_beta_db = 20.0; // SINR threshold for the density sweep

    long n_trials = 100000;
    std::uint64_t seed = 1;
    PeModel pe_model = PeModel::gaussian;
    HumanModel human_model = HumanModel::independent;
    int threads = 0;

    double phi_scale = 1.0;
    double trunc_epsilon = 1e-15;

    double kappa = 0.0;      // >0: tie omega_t = kappa*1.06/n_a in array sweeps
    int n_ct_override = 0;   // >0: bypass the concurrent-beam bound
    InterMode inter_mode = InterMode::approx;

    int quad_n = 1024;
    double validate_tolerance = 0.03;

    std::string out_path = "results.csv";
    bool json_sidecar = false;
};

// Parses flat "key = value" text ('#' comments, blank lines allowed) against
// the strict key schema; unknown keys, malformed values and violated
// invariants raise ConfigError naming the offending key. Empty text yields
// all defaults.
RunConfig parse_config(const std::string& text);

// The fully resolved configuration as canonical "key = value" lines
// (embedded in every output file for provenance).
std::string render_config(const RunConfig& cfg);

// One line per key: name, unit, default, description (for --help).
std::string config_key_reference();

// Expanded sweep grid (inclusive endpoints; geometric when scale = log).
std::vector<double> sweep_values(const SweepSpec& s);

} // namespace thzcov
