#pragma once
#include "thzcov/model.hpp"

namespace thzcov {

struct TrainingBudget {
    double i_intra;   // W
    double i_inter;   // W
    double eta;       // (i_inter + n_0) / (p_t * xi * W(r_a))
    int n_ct_max;     // concurrent-beam bound from the training SINR constraint
    int n_ct;         // min(n_ct_max, n_rf)
    int n_bt;         // hierarchical training stages
};

// Modified Bessel function of the first kind, order zero; power series for
// small arguments, asymptotic expansion beyond 15.
double bessel_i0(double x);

// Interference from the other concurrent training beams of the same AP,
// evaluated at the coverage boundary.
double intra_interference(const Model& m, int n_ct);

// Lattice sum of sidelobe interference from APs beyond r_a, seen from the
// cell-corner UE and truncated at the analytic truncation radius. By
// default the summand carries the sidelobe gain and the wall-unblocked
// factor; `bare` keeps only the human factor (and drops the sidelobe gain).
double inter_interference_exact(const Model& m, bool bare = false);

// Closed-form continuum approximation of the same sum.
double inter_interference_approx(const Model& m);

// Which inter-AP interference estimate feeds the training SINR budget.
enum class InterMode { approx, exact, exact_bare };

double inter_interference(const Model& m, InterMode mode);

// Concurrent-beam bound at the training SINR threshold. Throws
// InfeasibleError when not even one beam meets the threshold.
int max_concurrent_beams(const Model& m, InterMode mode = InterMode::approx);

// Stage count of an n_ct-ary hierarchical search over the
// 4*pi*arctan(r_a/delta_h)/omega_t^2 candidate beams. Requires n_ct >= 2.
int training_stages(const Model& m, int n_ct);

// Full chain: bound, RF-chain cap (or explicit override), stage count.
TrainingBudget training_budget(const Model& m, int n_ct_override = 0,
                               InterMode mode = InterMode::approx);

} // namespace thzcov
