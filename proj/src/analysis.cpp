#include "thzcov/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "thzcov/channel.hpp"
#include "thzcov/errors.hpp"
#include "thzcov/parallel.hpp"

namespace thzcov {

namespace {

constexpr double PI = std::numbers::pi;
constexpr int INCLUSION_EXCLUSION_CAP = 20;

// d >= c_lo * d_ap * r and d <= c_hi * d_ap * r for normalized index
// distance r from the UE. Exact for the square grid; the hexagonal bounds
// follow from u^2+uv+v^2 being wedged between (u^2+v^2)/2 and 3(u^2+v^2)/2.
void lattice_distance_bounds(Topology t, double& c_lo, double& c_hi) {
    if (t == Topology::square) {
        c_lo = 1.0;
        c_hi = 1.0;
    } else {
        c_lo = 1.0 / std::sqrt(2.0);
        c_hi = std::sqrt(1.5);
    }
}

// Integer points within distance rho of any center fit in a disc of radius
// rho + sqrt(2)/2 of unit cells.
double annulus_count_bound(int k) {
    const double pad = std::sqrt(0.5);
    const double hi = (k + 1.0 + pad) * (k + 1.0 + pad);
    const double lo_r = std::max(0.0, k - pad);
    return PI * (hi - lo_r * lo_r);
}

// Analytic bound on sum over APs with normalized distance >= k0 of
// P_t*G_S*xi*p*W, using p*W <= exp(-(alpha+lambda_w+eps)d)/d^2.
double tail_bound_from(const Model& m, int k0) {
    double c_lo, c_hi;
    lattice_distance_bounds(m.p.topology, c_lo, c_hi);
    const double gamma = (m.dc.alpha + m.p.lambda_w + m.p.eps_f) * c_lo * m.p.d_ap;
    if (gamma <= 0.0)
        throw InfeasibleError("truncation: no exponential decay (alpha, lambda_w and eps_f all zero)");
    const double pref = m.p.p_t * m.sl.g_s * m.dc.xi;
    double sum = 0.0;
    for (int k = std::max(1, k0);; ++k) {
        const double dmin = c_lo * m.p.d_ap * k;
        const double term = pref * annulus_count_bound(k) * std::exp(-gamma * k) / (dmin * dmin);
        sum += term;
        if (term < sum * 1e-12 || k > k0 + 200000) break;
    }
    return sum;
}

} // namespace

TruncationInfo truncation_info(const Model& m) {
    double c_lo, c_hi;
    lattice_distance_bounds(m.p.topology, c_lo, c_hi);
    int mult = std::max(1, static_cast<int>(std::ceil(m.p.r_a / m.p.d_ap)));
    for (;; ++mult) {
        // APs beyond radius mult*d_ap have normalized distance > mult/c_hi.
        const int k0 = std::max(1, static_cast<int>(std::floor(mult / c_hi)));
        const double bound = tail_bound_from(m, k0);
        if (bound < m.trunc_epsilon || mult > 100000)
            return {mult * m.p.d_ap, bound};
    }
}

double truncation_radius(const Model& m) { return truncation_info(m).radius; }

namespace {

// Per-interferer quantities reused across the moment sums.
struct InterfererTerm {
    double w_pow;   // P_t*G_S*xi*W(d), W
    double p_h;
    double cond_w;  // P(wall-unblocked | serving wall-unblocked)
    // Per-side exceedance of this link's projection beyond the serving
    // link's on the same side; the conditional joint exponent of a pair is
    // lambda_w * sum_sides max(e1, e2).
    double e[4];
};

std::vector<InterfererTerm> interferer_terms(const Model& m, const std::vector<ApLink>& aps,
                                             const LinkGeometry& serving, double d_serving,
                                             const ApIndex& serving_idx) {
    const LinkGeometry sv[] = {serving};
    const ProjectionExtents se = union_extents(sv);
    const double s_side[4] = {se.x_pos, se.x_neg, se.y_pos, se.y_neg};

    std::vector<InterfererTerm> out;
    out.reserve(aps.size());
    for (const ApLink& al : aps) {
        if (al.idx == serving_idx) continue;
        if (al.link.d < d_serving) continue;
        InterfererTerm t;
        t.w_pow = m.p.p_t * m.sl.g_s * m.dc.xi * path_gain(al.link.d, m.dc.delta_h, m.p.eps_f);
        t.p_h = human_unblocked(al.link.d, m.dc.alpha);
        const LinkGeometry lv[] = {al.link};
        const ProjectionExtents le = union_extents(lv);
        const double l_side[4] = {le.x_pos, le.x_neg, le.y_pos, le.y_neg};
        double exponent = 0.0;
        for (int s = 0; s < 4; ++s) {
            t.e[s] = std::max(0.0, l_side[s] - s_side[s]);
            exponent += t.e[s];
        }
        t.cond_w = std::exp(-m.p.lambda_w * exponent);
        out.push_back(t);
    }
    return out;
}

InterferenceStats moments_from_terms(const Model& m, const std::vector<InterfererTerm>& terms,
                                     const TruncationInfo& tr) {
    InterferenceStats st;
    st.truncation_radius = tr.radius;
    st.truncation_tail_bound = tr.tail_bound;

    for (const InterfererTerm& t : terms) {
        const double q = t.p_h * t.cond_w;
        st.mu += q * t.w_pow;
        st.sigma2 += q * (1.0 - q) * t.w_pow * t.w_pow;
    }

    const double lw = m.p.lambda_w;
    const std::size_t n = terms.size();
    for (std::size_t a = 0; a < n; ++a) {
        const InterfererTerm& ta = terms[a];
        for (std::size_t b = a + 1; b < n; ++b) {
            const InterfererTerm& tb = terms[b];
            // Conditional covariance vanishes unless both links stick out
            // past the serving link on a common side.
            const bool overlap = (std::min(ta.e[0], tb.e[0]) > 0.0) ||
                                 (std::min(ta.e[1], tb.e[1]) > 0.0) ||
                                 (std::min(ta.e[2], tb.e[2]) > 0.0) ||
                                 (std::min(ta.e[3], tb.e[3]) > 0.0);
            if (!overlap) continue;
            double exp_joint = 0.0;
            for (int s = 0; s < 4; ++s) exp_joint += std::max(ta.e[s], tb.e[s]);
            const double cov_w = std::exp(-lw * exp_joint) - ta.cond_w * tb.cond_w;
            st.sigma2 += 2.0 * ta.p_h * tb.p_h * cov_w * ta.w_pow * tb.w_pow;
        }
    }
    return st;
}

} // namespace

InterferenceStats interference_moments(const Model& m, UeLocation ue, ApIndex serving) {
    const LinkGeometry sl = link_geometry(m.p.topology, ue, serving, m.p.d_ap);
    if (sl.d > m.p.r_a) throw std::invalid_argument("interference_moments: serving AP outside r_a");
    const TruncationInfo tr = truncation_info(m);
    const std::vector<ApLink> aps = aps_within(m.p.topology, ue, tr.radius, m.p.d_ap);
    const std::vector<InterfererTerm> terms = interferer_terms(m, aps, sl, sl.d, serving);
    return moments_from_terms(m, terms, tr);
}

namespace {

// Association probability of the AP at position `pos` in the preference
// order, by inclusion-exclusion over subsets of the preferred APs.
double assoc_prob_at(const Model& m, const std::vector<ApLink>& sorted, std::size_t pos) {
    const std::size_t k = pos;
    if (k > INCLUSION_EXCLUSION_CAP)
        throw InfeasibleError("association: preferred set of " + std::to_string(k) +
                              " APs exceeds the inclusion-exclusion cap of " +
                              std::to_string(INCLUSION_EXCLUSION_CAP));
    const LinkGeometry& own = sorted[pos].link;
    const double own_ph = human_unblocked(own.d, m.dc.alpha);
    const LinkGeometry ov[] = {own};
    const ProjectionExtents oe = union_extents(ov);
    const double own_side[4] = {oe.x_pos, oe.x_neg, oe.y_pos, oe.y_neg};

    // Per preferred link: human factor and per-side extents.
    std::vector<double> ph(k);
    std::vector<std::array<double, 4>> side(k);
    for (std::size_t i = 0; i < k; ++i) {
        const LinkGeometry& l = sorted[i].link;
        ph[i] = human_unblocked(l.d, m.dc.alpha);
        const LinkGeometry lv[] = {l};
        const ProjectionExtents le = union_extents(lv);
        side[i] = {le.x_pos, le.x_neg, le.y_pos, le.y_neg};
    }

    double total = 0.0;
    const std::uint32_t n_masks = 1u << k;
    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
        double prod = own_ph;
        double u[4] = {own_side[0], own_side[1], own_side[2], own_side[3]};
        int bits = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                ++bits;
                prod *= ph[i];
                for (int s = 0; s < 4; ++s) u[s] = std::max(u[s], side[i][s]);
            }
        }
        const double joint_w = std::exp(-m.p.lambda_w * (u[0] + u[1] + u[2] + u[3]));
        total += ((bits & 1) ? -1.0 : 1.0) * prod * joint_w;
    }
    return total;
}

std::size_t find_ap(const std::vector<ApLink>& sorted, ApIndex idx, const char* who) {
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i].idx == idx) return i;
    throw std::invalid_argument(std::string(who) + ": AP not within r_a of the UE");
}

} // namespace

double association_prob(const Model& m, UeLocation ue, ApIndex idx) {
    const std::vector<ApLink> sorted = aps_within(m.p.topology, ue, m.p.r_a, m.p.d_ap);
    return assoc_prob_at(m, sorted, find_ap(sorted, idx, "association_prob"));
}

double association_prob_independent(const Model& m, UeLocation ue, ApIndex idx) {
    const std::vector<ApLink> sorted = aps_within(m.p.topology, ue, m.p.r_a, m.p.d_ap);
    const std::size_t pos = find_ap(sorted, idx, "association_prob_independent");
    const BlockageProbs own = blockage_probs(sorted[pos].link, m.dc.alpha, m.p.lambda_w);
    double prob = own.p;
    for (std::size_t i = 0; i < pos; ++i) {
        const BlockageProbs b = blockage_probs(sorted[i].link, m.dc.alpha, m.p.lambda_w);
        prob *= 1.0 - b.p;
    }
    return prob;
}

namespace {
AssociationTable table_impl(const Model& m, UeLocation ue, bool independent) {
    AssociationTable tab;
    const std::vector<ApLink> sorted = aps_within(m.p.topology, ue, m.p.r_a, m.p.d_ap);
    for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
        double pr;
        if (independent) {
            const BlockageProbs own = blockage_probs(sorted[pos].link, m.dc.alpha, m.p.lambda_w);
            pr = own.p;
            for (std::size_t i = 0; i < pos; ++i)
                pr *= 1.0 - blockage_probs(sorted[i].link, m.dc.alpha, m.p.lambda_w).p;
        } else {
            pr = assoc_prob_at(m, sorted, pos);
        }
        tab.entries.push_back({sorted[pos].idx, pr});
        tab.total += pr;
    }
    return tab;
}
} // namespace

AssociationTable association_table(const Model& m, UeLocation ue) {
    return table_impl(m, ue, false);
}

AssociationTable association_table_independent(const Model& m, UeLocation ue) {
    return table_impl(m, ue, true);
}

namespace {

struct ServingTerm {
    ApIndex idx;
    double assoc;
    double zeta;   // mainlobe received power scale, W
    double mu;     // conditional interference mean, W
    double sigma2; // conditional interference variance, W^2
};

std::vector<ServingTerm> serving_terms(const Model& m, UeLocation ue) {
    const std::vector<ApLink> in_range = aps_within(m.p.topology, ue, m.p.r_a, m.p.d_ap);
    if (in_range.empty()) return {};
    const TruncationInfo tr = truncation_info(m);
    const std::vector<ApLink> in_trunc = aps_within(m.p.topology, ue, tr.radius, m.p.d_ap);

    std::vector<ServingTerm> out;
    out.reserve(in_range.size());
    for (std::size_t pos = 0; pos < in_range.size(); ++pos) {
        const ApLink& al = in_range[pos];
        ServingTerm t;
        t.idx = al.idx;
        t.assoc = assoc_prob_at(m, in_range, pos);
        t.zeta = m.p.p_t * m.dc.xi * m.dc.g_max * path_gain(al.link.d, m.dc.delta_h, m.p.eps_f);
        const std::vector<InterfererTerm> terms =
            interferer_terms(m, in_trunc, al.link, al.link.d, al.idx);
        const InterferenceStats st = moments_from_terms(m, terms, tr);
        t.mu = st.mu;
        t.sigma2 = st.sigma2;
        out.push_back(t);
    }
    return out;
}

double bracket_with_pe(const Model& m, const ServingTerm& t, double beta) {
    const PointingErrorDist dist = m.pe_dist();
    const double arg = (t.mu + m.p.n_0) * beta / t.zeta;
    const double v = 1.0 - pe_cdf(arg, dist) -
                     beta * beta * t.sigma2 / (2.0 * t.zeta * t.zeta) * pe_pdf_derivative(arg, dist);
    return v;
}

} // namespace

double conditional_coverage(const Model& m, UeLocation ue, ApIndex serving, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("conditional_coverage: beta > 0");
    const LinkGeometry sl = link_geometry(m.p.topology, ue, serving, m.p.d_ap);
    if (sl.d > m.p.r_a) throw std::invalid_argument("conditional_coverage: serving AP outside r_a");
    const InterferenceStats st = interference_moments(m, ue, serving);
    ServingTerm t;
    t.idx = serving;
    t.assoc = 0.0;
    t.zeta = m.p.p_t * m.dc.xi * m.dc.g_max * path_gain(sl.d, m.dc.delta_h, m.p.eps_f);
    t.mu = st.mu;
    t.sigma2 = st.sigma2;
    return std::clamp(bracket_with_pe(m, t, beta), 0.0, 1.0);
}

std::vector<double> coverage_curve(const Model& m, UeLocation ue, std::span<const double> betas) {
    const std::vector<ServingTerm> terms = serving_terms(m, ue);
    std::vector<double> out;
    out.reserve(betas.size());
    for (const double beta : betas) {
        if (beta <= 0.0) throw std::invalid_argument("coverage_curve: beta > 0");
        double pc = 0.0;
        for (const ServingTerm& t : terms)
            pc += t.assoc * std::clamp(bracket_with_pe(m, t, beta), 0.0, 1.0);
        out.push_back(std::clamp(pc, 0.0, 1.0));
    }
    return out;
}

std::vector<double> coverage_curve_perfect(const Model& m, UeLocation ue,
                                           std::span<const double> betas) {
    const std::vector<ServingTerm> terms = serving_terms(m, ue);
    std::vector<double> out;
    out.reserve(betas.size());
    for (const double beta : betas) {
        if (beta <= 0.0) throw std::invalid_argument("coverage_curve_perfect: beta > 0");
        double pc = 0.0;
        for (const ServingTerm& t : terms)
            if ((t.mu + m.p.n_0) * beta / t.zeta < 1.0) pc += t.assoc;
        out.push_back(std::clamp(pc, 0.0, 1.0));
    }
    return out;
}

CoverageResult coverage_at_location(const Model& m, UeLocation ue, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("coverage_at_location: beta > 0");
    const std::vector<ServingTerm> terms = serving_terms(m, ue);
    CoverageResult res;
    for (const ServingTerm& t : terms) {
        const double cond = std::clamp(bracket_with_pe(m, t, beta), 0.0, 1.0);
        res.per_ap_terms.push_back({t.idx, t.assoc, cond});
        res.p_c_raw += t.assoc * cond;
    }
    res.p_c = std::clamp(res.p_c_raw, 0.0, 1.0);
    return res;
}

double coverage_perfect_alignment(const Model& m, UeLocation ue, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("coverage_perfect_alignment: beta > 0");
    const double b[] = {beta};
    return coverage_curve_perfect(m, ue, b)[0];
}

double average_coverage(const Model& m, double beta, int n_quad, int threads) {
    if (n_quad < 16) throw std::invalid_argument("average_coverage: n_quad >= 16");
    const std::vector<QuadNode> nodes = fundamental_region_quadrature(m.p.topology, n_quad);
    std::vector<double> vals(nodes.size());
    detail::parallel_for(static_cast<long>(nodes.size()), threads, [&](long i) {
        vals[i] = coverage_at_location(m, nodes[i].ue, beta).p_c;
    });
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        num += nodes[i].weight * vals[i];
        den += nodes[i].weight;
    }
    return num / den;
}

Model model_at_density(const Model& m, double lambda_a) {
    if (lambda_a <= 0.0) throw std::invalid_argument("model_at_density: lambda_a > 0");
    const double c2 = m.p.topology == Topology::ppp ? 1.0 : grid_constants(m.p.topology).c2;
    SystemParams p = m.p;
    const double d_new = std::sqrt(1.0 / (c2 * lambda_a));
    p.r_a = m.p.r_a * d_new / m.p.d_ap; // keep the coverage-to-cell ratio fixed
    p.d_ap = d_new;
    return Model::make(p, m.phi_scale, m.trunc_epsilon);
}

std::vector<double> coverage_vs_density(const Model& m, int location_id, double beta,
                                        std::span<const double> lambda_grid) {
    std::vector<double> out;
    out.reserve(lambda_grid.size());
    const UeLocation ue = representative_location(m.p.topology, location_id);
    for (const double la : lambda_grid) {
        const Model md = model_at_density(m, la);
        out.push_back(coverage_at_location(md, ue, beta).p_c);
    }
    return out;
}

} // namespace thzcov
