#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "thzcov/analysis.hpp"
#include "thzcov/model.hpp"
#include "thzcov/rng.hpp"

namespace thzcov {

// How trial human blockage is realized.
//  independent: one draw per link per trial with the marginal exp(-alpha*d);
//    blockage states are independent across links, mirroring the assumption
//    baked into the closed-form association/interference expressions.
//  scene: shared Poisson human centers tested against each link's geometric
//    blockage zone; marginals are identical, but links whose zones overlap
//    become positively correlated (a richer model than the closed forms).
enum class HumanModel { independent, scene };

struct SimOptions {
    long n_trials = 100000;
    std::uint64_t seed = 1;
    PeModel pe_model = PeModel::gaussian;
    HumanModel human_model = HumanModel::independent;
    int threads = 0; // 0 = hardware concurrency
};

// One realization of the random environment. Wall coordinates are sorted;
// the stored extents are the generation windows (used by the Poisson-moment
// oracles). Humans are generated only inside the influence box around the
// UE beyond which no blockage zone can reach.
struct Scene {
    std::vector<double> walls_x;
    std::vector<double> walls_y;
    std::vector<Point> humans;
    double wall_x_lo = 0, wall_x_hi = 0;
    double wall_y_lo = 0, wall_y_hi = 0;
    double human_lo_x = 0, human_hi_x = 0;
    double human_lo_y = 0, human_hi_y = 0;
};

struct TrialOutcome {
    std::optional<ApIndex> associated;
    double sinr = 0.0;
    double pointing_loss = 0.0;
    double interference = 0.0; // W
};

struct Estimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    long n_trials = 0;
};

// Immutable per-(model, UE) tables shared by all trials: the AP list within
// the truncation radius in association-preference order, per-AP channel
// terms and blockage-zone geometry, and the scene generation windows.
class SimContext {
public:
    // radius <= 0 selects the interference truncation radius; association-only
    // estimators restrict to r_a, which shrinks the scene windows to match.
    explicit SimContext(const Model& m, UeLocation ue, double radius = 0.0);

    const Model& model() const { return model_; }
    UeLocation ue() const { return ue_; }
    Point ue_point() const { return ue_pt_; }
    double truncation_radius() const { return trunc_radius_; }
    double zone_fraction() const { return zone_frac_; }

    struct ApEntry {
        ApIndex idx;
        double d;             // horizontal distance, m
        Point pos;            // physical AP position
        double serve_scale;   // P_t*xi*G_max*W(d)
        double interf_power;  // P_t*G_S*xi*W(d)
        double p_h;           // marginal human-unblocked probability
        double zone_len;      // human blockage zone length along the link
        double ux, uy;        // unit vector UE->AP (0 for the overhead AP)
        double wall_lo_x, wall_hi_x;
        double wall_lo_y, wall_hi_y;
        bool in_range;        // d <= r_a
    };
    const std::vector<ApEntry>& aps() const { return aps_; }

    double wall_x_lo() const { return wall_x_lo_; }
    double wall_x_hi() const { return wall_x_hi_; }
    double wall_y_lo() const { return wall_y_lo_; }
    double wall_y_hi() const { return wall_y_hi_; }
    double human_half_width() const { return human_half_width_; }

    // APs sorted by bearing from the UE, for the per-human angular search.
    struct AngleRef {
        double angle;
        std::uint32_t ap;
    };
    const std::vector<AngleRef>& by_angle() const { return by_angle_; }

private:
    Model model_;
    UeLocation ue_;
    Point ue_pt_;
    double trunc_radius_;
    double zone_frac_;
    double human_half_width_;
    double wall_x_lo_, wall_x_hi_, wall_y_lo_, wall_y_hi_;
    std::vector<ApEntry> aps_;
    std::vector<AngleRef> by_angle_;
};

// Deterministic function of (seed, trial): wall lines from two independent
// 1D Poisson processes, human centers from a 2D Poisson process on the
// influence box.
Scene realize_scene(std::uint64_t seed, std::uint64_t trial, const SimContext& ctx);

// True iff any wall line falls strictly between the endpoints on its axis.
bool wall_blocked(const Scene& scene, const Point& ue, const Point& ap);

// True iff any human center lies in the rectangle of width 2*r_b along the
// link, from the UE out to zone_frac*d toward the AP.
bool human_blocked(const Scene& scene, const Point& ue, const Point& ap, double r_b,
                   double zone_frac);

TrialOutcome run_trial(std::uint64_t seed, std::uint64_t trial, const SimContext& ctx,
                       PeModel pe_model, HumanModel human_model);

Estimate estimate_coverage(const Model& m, UeLocation ue, double beta, const SimOptions& opt);

// One pass over the trials, thresholded against every beta in the grid.
std::vector<Estimate> estimate_coverage_curve(const Model& m, UeLocation ue,
                                              std::span<const double> betas,
                                              const SimOptions& opt);

struct MomentEstimate {
    Estimate mean;
    Estimate variance;
    long accepted = 0;
};

// Conditional interference moments given the serving link is wall-unblocked
// (rejection conditioning; the interferer set matches the analysis).
MomentEstimate estimate_interference_moments(const Model& m, UeLocation ue, ApIndex serving,
                                             const SimOptions& opt);

struct AssociationFrequency {
    std::vector<AssociationEntry> entries; // per in-range AP, preference order
    double total = 0.0;                    // P(any association)
    double total_half_width_95 = 0.0;
    long n_trials = 0;
};

// Association-only trials (no interference accounting); cheap.
AssociationFrequency estimate_association(const Model& m, UeLocation ue, const SimOptions& opt);

// Coverage with APs redrawn per trial from a 2D Poisson process of density
// lambda_a; the UE sits at the window center and the coverage radius scales
// with the equivalent spacing sqrt(1/lambda_a).
Estimate ppp_baseline_coverage(double lambda_a, double beta, const Model& m,
                               const SimOptions& opt);

// Independent pointing-loss draws (sample i depends only on (seed, i)).
std::vector<double> sample_pointing_losses(double omega_t, int n_a, PeModel model, long n,
                                           std::uint64_t seed);

} // namespace thzcov
