#pragma once
#include <optional>
#include <string>
#include <vector>

#include "thzcov/config.hpp"

namespace thzcov {

// analyze: closed forms only; simulate: Monte Carlo only; validate: both,
// plus a per-row pass/fail flag at the configured tolerance.
enum class RunMode { analyze, simulate, validate };

struct ResultRow {
    std::string experiment;
    std::string topology;
    double location_x = 0.0;
    double location_y = 0.0;
    std::string sweep_name;
    double sweep_value = 0.0;
    std::optional<double> analytic;
    std::optional<double> sim_mean;
    std::optional<double> sim_ci95;
    std::optional<long> n_trials;
    std::optional<std::uint64_t> seed;
    double trunc_radius_m = 0.0;
    std::optional<bool> pass;
};

std::vector<ResultRow> run_experiment(const RunConfig& cfg, RunMode mode);

std::string render_csv(const RunConfig& cfg, const std::vector<ResultRow>& rows);

// Write-temp-then-rename; nothing is left behind on failure. Throws IoError.
void write_csv(const std::string& path, const RunConfig& cfg, const std::vector<ResultRow>& rows);
void write_json_sidecar(const std::string& path, const RunConfig& cfg,
                        const std::vector<ResultRow>& rows);

} // namespace thzcov
