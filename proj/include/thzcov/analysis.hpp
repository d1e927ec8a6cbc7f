#pragma once
#include <span>
#include <vector>

#include "thzcov/blockage.hpp"
#include "thzcov/model.hpp"

namespace thzcov {

struct InterferenceStats {
    double mu = 0.0;                 // W
    double sigma2 = 0.0;             // W^2
    double truncation_radius = 0.0;  // m
    double truncation_tail_bound = 0.0; // W, analytic bound on the dropped tail
};

struct AssociationEntry {
    ApIndex idx;
    double prob;
};

struct AssociationTable {
    std::vector<AssociationEntry> entries;
    double total = 0.0;
};

struct CoverageTerm {
    ApIndex idx;
    double assoc;
    double conditional;
};

struct CoverageResult {
    double p_c = 0.0;     // clamped to [0,1]
    double p_c_raw = 0.0; // before clamping
    std::vector<CoverageTerm> per_ap_terms;
};

// Smallest multiple of d_ap (never below r_a) whose analytic tail bound on
// the remaining sidelobe interference lattice sum is below m.trunc_epsilon.
struct TruncationInfo {
    double radius;
    double tail_bound;
};
TruncationInfo truncation_info(const Model& m);
double truncation_radius(const Model& m);

// Mean/variance of aggregate sidelobe interference conditioned on the
// serving link being wall-unblocked. The interferer set is every AP with
// d >= d_serving (ties included, serving excluded) out to the truncation
// radius; the covariance double-sum skips pairs whose projections cannot
// overlap beyond the serving link's (their covariance is exactly zero).
InterferenceStats interference_moments(const Model& m, UeLocation ue, ApIndex serving);

// Exact inclusion-exclusion association probability. APs preferred over
// `idx` are those earlier in the (d, i, j) order used by aps_within, which
// matches the simulator's tie-break. Throws InfeasibleError if the
// preferred set exceeds the subset-enumeration cap.
double association_prob(const Model& m, UeLocation ue, ApIndex idx);

// Baseline that treats wall blockages as independent across links.
double association_prob_independent(const Model& m, UeLocation ue, ApIndex idx);

AssociationTable association_table(const Model& m, UeLocation ue);
AssociationTable association_table_independent(const Model& m, UeLocation ue);

// P(SINR > beta | served by `serving`), via the second-order expansion of
// the pointing-loss CDF around the interference mean; clamped to [0,1].
double conditional_coverage(const Model& m, UeLocation ue, ApIndex serving, double beta);

CoverageResult coverage_at_location(const Model& m, UeLocation ue, double beta);

// Coverage with H_pe == 1 (no pointing error, no variance correction).
double coverage_perfect_alignment(const Model& m, UeLocation ue, double beta);

// Evaluates the full coverage curve over a beta grid, reusing the per-AP
// association and interference terms across thresholds.
std::vector<double> coverage_curve(const Model& m, UeLocation ue, std::span<const double> betas);
std::vector<double> coverage_curve_perfect(const Model& m, UeLocation ue,
                                           std::span<const double> betas);

// Quadrature average of coverage over the fundamental region, normalized by
// the region area. n_quad >= 16 nodes; nodes evaluate in parallel with a
// fixed reduction order.
double average_coverage(const Model& m, double beta, int n_quad, int threads = 0);

// Rebuilds the model for each AP density (d_ap = sqrt(1/(c2*lambda)), r_a
// scaled proportionally) and evaluates coverage at the representative
// location. Fractional UE coordinates stay fixed across densities.
std::vector<double> coverage_vs_density(const Model& m, int location_id, double beta,
                                        std::span<const double> lambda_grid);

// Model rebuilt at AP density lambda_a (used by the density sweep and the
// PPP baseline window sizing).
Model model_at_density(const Model& m, double lambda_a);

} // namespace thzcov
