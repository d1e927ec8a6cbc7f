#include "thzcov/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thzcov/analysis.hpp"
#include "thzcov/beamtrain.hpp"
#include "thzcov/errors.hpp"
#include "thzcov/simulate.hpp"

namespace thzcov {

namespace {

SimOptions sim_options(const RunConfig& cfg) {
    SimOptions o;
    o.n_trials = cfg.n_trials;
    o.seed = cfg.seed;
    o.pe_model = cfg.pe_model;
    o.human_model = cfg.human_model;
    o.threads = cfg.threads;
    return o;
}

bool row_pass(const RunConfig& cfg, double analytic, double sim, double ci95) {
    // Fixed tolerance plus 3-sigma statistical slack.
    return std::abs(analytic - sim) <= cfg.validate_tolerance + 3.0 / 1.96 * ci95;
}

Model make_model(const RunConfig& cfg, Topology t) {
    SystemParams p = cfg.params;
    p.topology = t;
    return Model::make(p, cfg.phi_scale, cfg.trunc_epsilon);
}

void require_grid(Topology t, const char* experiment) {
    if (t == Topology::ppp)
        throw ConfigError(std::string(experiment) +
                          ": topology ppp has no closed form; only coverage_vs_density supports it");
}

std::vector<ResultRow> run_coverage_vs_beta(const RunConfig& cfg, RunMode mode) {
    std::vector<ResultRow> rows;
    const std::vector<double> betas_db = sweep_values(cfg.sweep);
    std::vector<double> betas_lin;
    betas_lin.reserve(betas_db.size());
    for (double b : betas_db) betas_lin.push_back(db_to_linear(b));

    for (Topology t : cfg.topologies) {
        require_grid(t, "coverage_vs_beta");
        const Model m = make_model(cfg, t);
        const double trunc = truncation_radius(m);
        for (int loc : cfg.locations) {
            const UeLocation ue = representative_location(t, loc);
            std::vector<double> analytic;
            if (mode != RunMode::simulate) analytic = coverage_curve(m, ue, betas_lin);
            std::vector<Estimate> sims;
            if (mode != RunMode::analyze)
                sims = estimate_coverage_curve(m, ue, betas_lin, sim_options(cfg));
            for (std::size_t i = 0; i < betas_db.size(); ++i) {
                ResultRow r;
                r.experiment = experiment_name(cfg.experiment);
                r.topology = topology_name(t);
                r.location_x = ue.x0;
                r.location_y = ue.y0;
                r.sweep_name = cfg.sweep.name;
                r.sweep_value = betas_db[i];
                r.trunc_radius_m = trunc;
                if (!analytic.empty()) r.analytic = analytic[i];
                if (!sims.empty()) {
                    r.sim_mean = sims[i].mean;
                    r.sim_ci95 = sims[i].half_width_95;
                    r.n_trials = cfg.n_trials;
                    r.seed = cfg.seed;
                }
                if (mode == RunMode::validate)
                    r.pass = row_pass(cfg, *r.analytic, *r.sim_mean, *r.sim_ci95);
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_association(const RunConfig& cfg, RunMode mode) {
    std::vector<ResultRow> rows;
    const std::vector<double> lws = sweep_values(cfg.sweep);
    for (Topology t : cfg.topologies) {
        require_grid(t, "association_vs_lambda_w");
        for (int loc : cfg.locations) {
            const UeLocation ue = representative_location(t, loc);
            for (double lw : lws) {
                RunConfig c = cfg;
                c.params.lambda_w = lw;
                const Model m = make_model(c, t);
                const double trunc = truncation_radius(m);

                ResultRow r;
                r.experiment = experiment_name(cfg.experiment);
                r.topology = topology_name(t);
                r.location_x = ue.x0;
                r.location_y = ue.y0;
                r.sweep_name = cfg.sweep.name;
                r.sweep_value = lw;
                r.trunc_radius_m = trunc;
                if (mode != RunMode::simulate) r.analytic = association_table(m, ue).total;
                if (mode != RunMode::analyze) {
                    const AssociationFrequency f = estimate_association(m, ue, sim_options(cfg));
                    r.sim_mean = f.total;
                    r.sim_ci95 = f.total_half_width_95;
                    r.n_trials = cfg.n_trials;
                    r.seed = cfg.seed;
                }
                if (mode == RunMode::validate)
                    r.pass = row_pass(cfg, *r.analytic, *r.sim_mean, *r.sim_ci95);
                rows.push_back(r);

                // Independence-assumption baseline, analytic only.
                if (mode != RunMode::simulate) {
                    ResultRow ri = rows.back();
                    ri.experiment += "_indep";
                    ri.analytic = association_table_independent(m, ue).total;
                    ri.sim_mean.reset();
                    ri.sim_ci95.reset();
                    ri.n_trials.reset();
                    ri.seed.reset();
                    ri.pass.reset();
                    rows.push_back(std::move(ri));
                }
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_density(const RunConfig& cfg, RunMode mode) {
    std::vector<ResultRow> rows;
    const std::vector<double> lambdas = sweep_values(cfg.sweep);
    const double beta = db_to_linear(cfg.density_beta_db);
    for (Topology t : cfg.topologies) {
        if (t == Topology::ppp) {
            const Model base = make_model(cfg, Topology::square); // channel/blockage params only
            for (double la : lambdas) {
                ResultRow r;
                r.experiment = experiment_name(cfg.experiment);
                r.topology = "ppp";
                r.sweep_name = cfg.sweep.name;
                r.sweep_value = la;
                if (mode != RunMode::analyze) {
                    const Estimate e = ppp_baseline_coverage(la, beta, base, sim_options(cfg));
                    r.sim_mean = e.mean;
                    r.sim_ci95 = e.half_width_95;
                    r.n_trials = cfg.n_trials;
                    r.seed = cfg.seed;
                }
                rows.push_back(std::move(r));
            }
            continue;
        }
        const Model base = make_model(cfg, t);
        for (int loc : cfg.locations) {
            const UeLocation ue = representative_location(t, loc);
            for (double la : lambdas) {
                const Model md = model_at_density(base, la);
                ResultRow r;
                r.experiment = experiment_name(cfg.experiment);
                r.topology = topology_name(t);
                r.location_x = ue.x0;
                r.location_y = ue.y0;
                r.sweep_name = cfg.sweep.name;
                r.sweep_value = la;
                r.trunc_radius_m = truncation_radius(md);
                if (mode != RunMode::simulate)
                    r.analytic = coverage_at_location(md, ue, beta).p_c;
                if (mode != RunMode::analyze) {
                    const Estimate e = estimate_coverage(md, ue, beta, sim_options(cfg));
                    r.sim_mean = e.mean;
                    r.sim_ci95 = e.half_width_95;
                    r.n_trials = cfg.n_trials;
                    r.seed = cfg.seed;
                }
                if (mode == RunMode::validate)
                    r.pass = row_pass(cfg, *r.analytic, *r.sim_mean, *r.sim_ci95);
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_training(const RunConfig& cfg) {
    std::vector<ResultRow> rows;
    const std::vector<double> sizes = sweep_values(cfg.sweep);
    for (double sz : sizes) {
        const int n_a = static_cast<int>(std::lround(sz));
        RunConfig c = cfg;
        c.params.n_a = n_a;
        if (cfg.kappa > 0.0) c.params.omega_t = cfg.kappa * 1.06 / n_a;
        const Model m = make_model(c, c.params.topology == Topology::ppp ? Topology::square
                                                                         : c.params.topology);
        const TrainingBudget b = training_budget(m, cfg.n_ct_override, cfg.inter_mode);
        ResultRow r;
        r.experiment = experiment_name(cfg.experiment);
        r.topology = topology_name(m.p.topology);
        r.sweep_name = cfg.sweep.name;
        r.sweep_value = n_a;
        r.analytic = b.n_bt;
        r.trunc_radius_m = cfg.inter_mode == InterMode::approx ? 0.0 : truncation_radius(m);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> run_pe_distribution(const RunConfig& cfg, RunMode mode) {
    std::vector<ResultRow> rows;
    const Topology t =
        cfg.params.topology == Topology::ppp ? Topology::square : cfg.params.topology;
    const Model m = make_model(cfg, t);
    const PointingErrorDist dist = m.pe_dist();

    double lo = cfg.sweep.start, hi = cfg.sweep.stop;
    if (!cfg.sweep.explicit_spec) {
        lo = dist.omega_1 * dist.omega_1;
        hi = 1.0;
    }
    const int nb = cfg.sweep.n;
    const double width = (hi - lo) / nb;

    std::vector<long> counts(nb, 0);
    long n = 0;
    if (mode != RunMode::analyze) {
        const std::vector<double> samples =
            sample_pointing_losses(m.p.omega_t, m.p.n_a, cfg.pe_model, cfg.n_trials, cfg.seed);
        n = static_cast<long>(samples.size());
        for (double s : samples) {
            const int b = static_cast<int>(std::floor((s - lo) / width));
            if (b >= 0 && b < nb) ++counts[b];
        }
    }

    for (int b = 0; b < nb; ++b) {
        const double center = lo + (b + 0.5) * width;
        ResultRow r;
        r.experiment = experiment_name(cfg.experiment);
        r.topology = topology_name(t);
        r.sweep_name = cfg.sweep.name;
        r.sweep_value = center;
        if (mode != RunMode::simulate) r.analytic = pe_pdf(center, dist);
        if (mode != RunMode::analyze) {
            const double p = static_cast<double>(counts[b]) / n;
            r.sim_mean = p / width;
            r.sim_ci95 = 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) / n) / width;
            r.n_trials = cfg.n_trials;
            r.seed = cfg.seed;
        }
        if (mode == RunMode::validate)
            r.pass = row_pass(cfg, *r.analytic, *r.sim_mean, *r.sim_ci95);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

std::vector<ResultRow> run_experiment(const RunConfig& cfg, RunMode mode) {
    switch (cfg.experiment) {
        case Experiment::coverage_vs_beta:
            return run_coverage_vs_beta(cfg, mode);
        case Experiment::validate:
            return run_coverage_vs_beta(cfg, RunMode::validate);
        case Experiment::association_vs_lambda_w:
            return run_association(cfg, mode);
        case Experiment::coverage_vs_density:
            return run_density(cfg, mode);
        case Experiment::training_vs_array:
            return run_training(cfg);
        case Experiment::pe_distribution:
            return run_pe_distribution(cfg, mode);
    }
    throw ConfigError("experiment: unhandled value");
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string render_csv(const RunConfig& cfg, const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os << "# thzcov results\n";
    std::istringstream conf(render_config(cfg));
    std::string line;
    while (std::getline(conf, line)) os << "# " << line << "\n";

    bool with_pass = false;
    for (const ResultRow& r : rows)
        if (r.pass.has_value()) with_pass = true;

    os << "experiment,topology,location_x,location_y,sweep_name,sweep_value,analytic,sim_mean,"
          "sim_ci95,n_trials,seed,trunc_radius_m";
    if (with_pass) os << ",pass";
    os << "\n";
    for (const ResultRow& r : rows) {
        os << r.experiment << ',' << r.topology << ',' << fmt_g(r.location_x) << ','
           << fmt_g(r.location_y) << ',' << r.sweep_name << ',' << fmt_g(r.sweep_value) << ',';
        if (r.analytic) os << fmt_g(*r.analytic);
        os << ',';
        if (r.sim_mean) os << fmt_g(*r.sim_mean);
        os << ',';
        if (r.sim_ci95) os << fmt_g(*r.sim_ci95);
        os << ',';
        if (r.n_trials) os << *r.n_trials;
        os << ',';
        if (r.seed) os << *r.seed;
        os << ',' << fmt_g(r.trunc_radius_m);
        if (with_pass) {
            os << ',';
            if (r.pass) os << (*r.pass ? 1 : 0);
        }
        os << "\n";
    }
    return os.str();
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp + "' for writing");
        f << content;
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw IoError("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("rename '" + tmp + "' -> '" + path + "' failed");
    }
}

} // namespace

void write_csv(const std::string& path, const RunConfig& cfg, const std::vector<ResultRow>& rows) {
    atomic_write(path, render_csv(cfg, rows));
}

void write_json_sidecar(const std::string& path, const RunConfig& cfg,
                        const std::vector<ResultRow>& rows) {
    nlohmann::json root;
    nlohmann::json conf;
    std::istringstream is(render_config(cfg));
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) conf[line.substr(0, eq)] = line.substr(eq + 3);
    }
    root["config"] = conf;
    nlohmann::json jrows = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json j;
        j["experiment"] = r.experiment;
        j["topology"] = r.topology;
        j["location_x"] = r.location_x;
        j["location_y"] = r.location_y;
        j["sweep_name"] = r.sweep_name;
        j["sweep_value"] = r.sweep_value;
        if (r.analytic) j["analytic"] = *r.analytic;
        if (r.sim_mean) j["sim_mean"] = *r.sim_mean;
        if (r.sim_ci95) j["sim_ci95"] = *r.sim_ci95;
        if (r.n_trials) j["n_trials"] = *r.n_trials;
        if (r.seed) j["seed"] = *r.seed;
        j["trunc_radius_m"] = r.trunc_radius_m;
        if (r.pass) j["pass"] = *r.pass;
        jrows.push_back(std::move(j));
    }
    root["rows"] = std::move(jrows);
    atomic_write(path, root.dump(2) + "\n");
}

} // namespace thzcov
