#pragma once
#include <vector>

#include "thzcov/params.hpp"

namespace thzcov {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Lattice shear/stretch constants: (0,1) for square, (1/2, sqrt(3)/2) for
// hexagonal. Not defined for the PPP baseline.
struct GridConstants {
    double c1;
    double c2;
};

GridConstants grid_constants(Topology t);

// UE coordinates as fractions of d_ap inside the fundamental region.
struct UeLocation {
    double x0 = 0.0;
    double y0 = 0.0;
};

struct ApIndex {
    int i = 0;
    int j = 0;
    bool operator==(const ApIndex&) const = default;
};

// Per-link horizontal geometry. d is the horizontal UE-AP distance; d_x and
// d_y are the axis projection lengths used by the wall model (for the
// hexagonal grid d_x is an oblique-axis length, so d^2 == d_x^2 + d_y^2 is
// not an invariant). sgn_x/sgn_y carry the projection directions.
struct LinkGeometry {
    double d = 0.0;
    double d_x = 0.0;
    double d_y = 0.0;
    int sgn_x = 0;
    int sgn_y = 0;
};

Point ap_position(Topology t, ApIndex idx, double d_ap);
Point ue_position(Topology t, UeLocation ue, double d_ap);

LinkGeometry link_geometry(Topology t, UeLocation ue, ApIndex idx, double d_ap);

struct ApLink {
    ApIndex idx;
    LinkGeometry link;
};

// Every AP with d <= radius, sorted ascending by (d, i, j). The sort order
// doubles as the association preference order for tied distances.
std::vector<ApLink> aps_within(Topology t, UeLocation ue, double radius, double d_ap);

// APs strictly closer to the UE than idx; equal-distance APs are excluded.
std::vector<ApIndex> closer_set(Topology t, UeLocation ue, ApIndex idx, double d_ap,
                                double radius);

// Canonical evaluation points: 1 = under the nearest AP, 3 = cell corner
// (farthest point), 2 = midway between them.
UeLocation representative_location(Topology t, int which);

struct QuadNode {
    UeLocation ue;
    double weight;
};

// Midpoint-rule nodes over the fundamental region {0<=x<=1/2,
// 0<=y<=min(x, 1-4*c1*x)} in fractional coordinates. The region boundary is
// piecewise linear, so per-piece midpoint columns make the weights sum to
// the exact region area (1/8 square, 1/12 hexagonal).
std::vector<QuadNode> fundamental_region_quadrature(Topology t, int n_points);

} // namespace thzcov
