#include "thzcov/beamtrain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "thzcov/analysis.hpp"
#include "thzcov/blockage.hpp"
#include "thzcov/channel.hpp"
#include "thzcov/errors.hpp"

namespace thzcov {

namespace {
constexpr double PI = std::numbers::pi;
}

double bessel_i0(double x) {
    x = std::abs(x);
    if (x < 15.0) {
        // sum_k ((x^2/4)^k / (k!)^2)
        const double q = x * x / 4.0;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return sum;
    }
    // I0(x) ~ e^x/sqrt(2*pi*x) * (1 + 1/(8x) + 9/(2!(8x)^2) + 225/(3!(8x)^3) + ...)
    const double inv8x = 1.0 / (8.0 * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 10; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd * inv8x / k;
        sum += term;
    }
    return std::exp(x) / std::sqrt(2.0 * PI * x) * sum;
}

double intra_interference(const Model& m, int n_ct) {
    if (n_ct < 1) throw std::invalid_argument("intra_interference: n_ct >= 1");
    const double w = path_gain(m.p.r_a, m.dc.delta_h, m.p.eps_f);
    return (static_cast<double>(n_ct - 1) / n_ct) * m.p.p_t * m.sl.g_s * m.dc.xi * w;
}

double inter_interference_exact(const Model& m, bool bare) {
    // Worst-case UE: the cell corner (representative location 3).
    const UeLocation ue = representative_location(m.p.topology, 3);
    const double radius = truncation_radius(m);
    double sum = 0.0;
    for (const ApLink& al : aps_within(m.p.topology, ue, radius, m.p.d_ap)) {
        if (al.link.d <= m.p.r_a) continue;
        const double w = path_gain(al.link.d, m.dc.delta_h, m.p.eps_f);
        const double p_h = human_unblocked(al.link.d, m.dc.alpha);
        if (bare) {
            sum += m.p.p_t * m.dc.xi * p_h * w;
        } else {
            const double p_w = wall_unblocked(al.link.d_x, al.link.d_y, m.p.lambda_w);
            sum += m.p.p_t * m.sl.g_s * m.dc.xi * p_h * p_w * w;
        }
    }
    return sum;
}

double inter_interference_approx(const Model& m) {
    const double rate = m.dc.alpha + m.p.eps_f;
    if (rate <= 0.0)
        throw InfeasibleError("inter_interference_approx: alpha + eps_f must be positive");
    const double r = m.p.r_a;
    const double w = path_gain(r, m.dc.delta_h, m.p.eps_f);
    return 2.0 * PI * m.p.p_t * m.sl.g_s * m.dc.xi * r * std::exp(-m.dc.alpha * r) * w /
           (m.p.d_ap * m.p.d_ap * rate) * bessel_i0(std::sqrt(2.0) * m.p.lambda_w * r);
}

double inter_interference(const Model& m, InterMode mode) {
    switch (mode) {
        case InterMode::exact: return inter_interference_exact(m, false);
        case InterMode::exact_bare: return inter_interference_exact(m, true);
        default: return inter_interference_approx(m);
    }
}

int max_concurrent_beams(const Model& m, InterMode mode) {
    const double i_inter = inter_interference(m, mode);
    const double eta = (i_inter + m.p.n_0) / (m.p.p_t * m.dc.xi * path_gain(m.p.r_a, m.dc.delta_h, m.p.eps_f));
    const double w1sq = m.dc.omega_1 * m.dc.omega_1;
    const double bound =
        (w1sq * m.dc.g_max + m.p.beta_ct * m.sl.g_s) / (m.p.beta_ct * (m.sl.g_s + eta));
    const int n = static_cast<int>(std::floor(bound));
    if (n < 1)
        throw InfeasibleError("training infeasible: SINR threshold unreachable even with a single "
                              "beam (bound " + std::to_string(bound) + ")");
    return n;
}

int training_stages(const Model& m, int n_ct) {
    if (n_ct < 2)
        throw InfeasibleError("training_stages: n_ct = " + std::to_string(n_ct) +
                              " allows no hierarchical reduction");
    const double beams =
        4.0 * PI * std::atan(m.p.r_a / m.dc.delta_h) / (m.p.omega_t * m.p.omega_t);
    return static_cast<int>(std::ceil(std::log(beams) / std::log(static_cast<double>(n_ct))));
}

TrainingBudget training_budget(const Model& m, int n_ct_override, InterMode mode) {
    TrainingBudget b{};
    b.i_inter = inter_interference(m, mode);
    b.eta = (b.i_inter + m.p.n_0) /
            (m.p.p_t * m.dc.xi * path_gain(m.p.r_a, m.dc.delta_h, m.p.eps_f));
    b.n_ct_max = max_concurrent_beams(m, mode);
    b.n_ct = n_ct_override > 0 ? n_ct_override : std::min(b.n_ct_max, m.p.n_rf);
    b.i_intra = intra_interference(m, b.n_ct);
    b.n_bt = training_stages(m, b.n_ct);
    return b;
}

} // namespace thzcov
