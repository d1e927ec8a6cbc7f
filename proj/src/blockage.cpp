#include "thzcov/blockage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thzcov {

double human_unblocked(double d, double alpha) {
    if (d < 0.0) throw std::invalid_argument("human_unblocked: d >= 0");
    return std::exp(-alpha * d);
}

double wall_unblocked(double d_x, double d_y, double lambda_w) {
    if (d_x < 0.0 || d_y < 0.0) throw std::invalid_argument("wall_unblocked: projections >= 0");
    return std::exp(-lambda_w * (d_x + d_y));
}

BlockageProbs blockage_probs(const LinkGeometry& link, double alpha, double lambda_w) {
    BlockageProbs b;
    b.p_h = human_unblocked(link.d, alpha);
    b.p_w = wall_unblocked(link.d_x, link.d_y, lambda_w);
    b.p = b.p_h * b.p_w;
    return b;
}

ProjectionExtents union_extents(std::span<const LinkGeometry> links) {
    if (links.empty()) throw std::invalid_argument("union_extents: empty link set");
    ProjectionExtents e;
    for (const LinkGeometry& l : links) {
        if (l.sgn_x >= 0) e.x_pos = std::max(e.x_pos, l.d_x);
        else e.x_neg = std::max(e.x_neg, l.d_x);
        if (l.sgn_y >= 0) e.y_pos = std::max(e.y_pos, l.d_y);
        else e.y_neg = std::max(e.y_neg, l.d_y);
    }
    return e;
}

double joint_wall_unblocked(std::span<const LinkGeometry> links, double lambda_w) {
    const ProjectionExtents e = union_extents(links);
    return std::exp(-lambda_w * (e.x_union() + e.y_union()));
}

double wall_covariance(const LinkGeometry& a, const LinkGeometry& b, double lambda_w) {
    const LinkGeometry pair[] = {a, b};
    const double joint = joint_wall_unblocked(pair, lambda_w);
    return joint - wall_unblocked(a.d_x, a.d_y, lambda_w) * wall_unblocked(b.d_x, b.d_y, lambda_w);
}

double conditional_wall_unblocked(const LinkGeometry& target, const LinkGeometry& given,
                                  double lambda_w) {
    const LinkGeometry pair[] = {target, given};
    return joint_wall_unblocked(pair, lambda_w) /
           wall_unblocked(given.d_x, given.d_y, lambda_w);
}

double conditional_wall_covariance(const LinkGeometry& a, const LinkGeometry& b,
                                   const LinkGeometry& given, double lambda_w) {
    const double p_g = wall_unblocked(given.d_x, given.d_y, lambda_w);
    const LinkGeometry abg[] = {a, b, given};
    const LinkGeometry ag[] = {a, given};
    const LinkGeometry bg[] = {b, given};
    const double p_abg = joint_wall_unblocked(abg, lambda_w);
    const double p_ag = joint_wall_unblocked(ag, lambda_w);
    const double p_bg = joint_wall_unblocked(bg, lambda_w);
    return p_abg / p_g - (p_ag / p_g) * (p_bg / p_g);
}

} // namespace thzcov
