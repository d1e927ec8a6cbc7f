#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "thzcov/beamtrain.hpp"
#include "thzcov/config.hpp"
#include "thzcov/errors.hpp"
#include "thzcov/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw thzcov::IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CliArgs {
    std::string config_path;
    std::string out_path;
    std::string topology;
    long trials = -1;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("--config", a.config_path, "config file (key = value lines); omit for defaults");
    cmd->add_option("--out", a.out_path, "output CSV path (overrides output.path)");
    cmd->add_option("--seed", a.seed, "root seed (overrides sim.seed)");
    cmd->add_option("--trials", a.trials, "Monte Carlo trials (overrides sim.n_trials)");
    cmd->add_option("--topology", a.topology,
                    "restrict to one topology: square|hexagonal|ppp (overrides topologies)");
}

thzcov::RunConfig load_config(const CliArgs& a) {
    thzcov::RunConfig cfg =
        a.config_path.empty() ? thzcov::parse_config("") : thzcov::parse_config(read_file(a.config_path));
    if (!a.out_path.empty()) cfg.out_path = a.out_path;
    if (a.seed >= 0) cfg.seed = static_cast<std::uint64_t>(a.seed);
    if (a.trials >= 0) cfg.n_trials = a.trials;
    if (!a.topology.empty()) {
        const thzcov::Topology t = thzcov::topology_from_name(a.topology);
        cfg.topologies = {t};
        cfg.params.topology = t;
    }
    return cfg;
}

int execute(const CliArgs& a, thzcov::RunMode mode, bool force_training) {
    thzcov::RunConfig cfg = load_config(a);
    if (force_training) cfg.experiment = thzcov::Experiment::training_vs_array;
    const std::vector<thzcov::ResultRow> rows = thzcov::run_experiment(cfg, mode);
    thzcov::write_csv(cfg.out_path, cfg, rows);
    if (cfg.json_sidecar) thzcov::write_json_sidecar(cfg.out_path + ".json", cfg, rows);
    std::cout << rows.size() << " rows -> " << cfg.out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "thzcov: coverage, association, interference, pointing-error and beam-training "
        "analysis of grid-deployed indoor THz networks, with a Monte Carlo cross-check"};
    app.require_subcommand(1);
    app.footer(thzcov::config_key_reference() +
               "\nExit codes: 0 ok, 2 config error, 3 infeasible, 4 I/O error\n");

    CliArgs args;
    CLI::App* analyze = app.add_subcommand("analyze", "closed-form evaluation of the configured experiment");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation only");
    CLI::App* validate = app.add_subcommand("validate",
                                            "closed forms + Monte Carlo + per-row pass/fail");
    CLI::App* sweep = app.add_subcommand("sweep", "alias of analyze for sweep configs");
    CLI::App* beamtrain = app.add_subcommand("beamtrain", "beam-training stage-count sweep");
    for (CLI::App* c : {analyze, simulate, validate, sweep, beamtrain}) add_common(c, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return execute(args, thzcov::RunMode::analyze, false);
        if (simulate->parsed()) return execute(args, thzcov::RunMode::simulate, false);
        if (validate->parsed()) return execute(args, thzcov::RunMode::validate, false);
        if (sweep->parsed()) return execute(args, thzcov::RunMode::analyze, false);
        if (beamtrain->parsed()) return execute(args, thzcov::RunMode::analyze, true);
    } catch (const thzcov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const thzcov::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const thzcov::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
