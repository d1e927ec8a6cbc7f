#pragma once
#include <span>

#include "thzcov/geometry.hpp"

namespace thzcov {

struct BlockageProbs {
    double p_h; // unblocked by humans
    double p_w; // unblocked by walls
    double p;   // p_h * p_w
};

// Signed per-axis reach of a set of link projections anchored at the UE.
// The union of intervals anchored at a common point is [-neg, +pos] per
// axis, so the union length is pos + neg.
struct ProjectionExtents {
    double x_pos = 0.0;
    double x_neg = 0.0;
    double y_pos = 0.0;
    double y_neg = 0.0;
    double x_union() const { return x_pos + x_neg; }
    double y_union() const { return y_pos + y_neg; }
};

double human_unblocked(double d, double alpha);
double wall_unblocked(double d_x, double d_y, double lambda_w);

BlockageProbs blockage_probs(const LinkGeometry& link, double alpha, double lambda_w);

ProjectionExtents union_extents(std::span<const LinkGeometry> links);

// P(no wall crosses any link in the set) = exp(-lambda_w * union lengths).
double joint_wall_unblocked(std::span<const LinkGeometry> links, double lambda_w);

// Cov of the wall-unblocked indicators of two links; >= 0, zero iff the
// per-axis projections are disjoint.
double wall_covariance(const LinkGeometry& a, const LinkGeometry& b, double lambda_w);

// P(target wall-unblocked | given wall-unblocked).
double conditional_wall_unblocked(const LinkGeometry& target, const LinkGeometry& given,
                                  double lambda_w);

// Cov of two wall-unblocked indicators conditioned on a third link being
// wall-unblocked.
double conditional_wall_covariance(const LinkGeometry& a, const LinkGeometry& b,
                                   const LinkGeometry& given, double lambda_w);

} // namespace thzcov
