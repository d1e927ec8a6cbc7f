#include "thzcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thzcov {

GridConstants grid_constants(Topology t) {
    switch (t) {
        case Topology::square: return {0.0, 1.0};
        case Topology::hexagonal: return {0.5, std::sqrt(3.0) / 2.0};
        default: break;
    }
    throw std::invalid_argument("grid_constants: topology has no lattice");
}

Point ap_position(Topology t, ApIndex idx, double d_ap) {
    const auto [c1, c2] = grid_constants(t);
    return {(idx.i + c1 * idx.j) * d_ap, c2 * idx.j * d_ap};
}

Point ue_position(Topology t, UeLocation ue, double d_ap) {
    const auto [c1, c2] = grid_constants(t);
    return {(ue.x0 + c1 * ue.y0) * d_ap, c2 * ue.y0 * d_ap};
}

namespace {
int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }
} // namespace

LinkGeometry link_geometry(Topology t, UeLocation ue, ApIndex idx, double d_ap) {
    const auto [c1, c2] = grid_constants(t);
    const double vx = ue.x0 - idx.i + c1 * (ue.y0 - idx.j);
    const double vy = ue.y0 - idx.j;
    LinkGeometry g;
    g.d = d_ap * std::sqrt(vx * vx + c2 * c2 * vy * vy);
    g.d_x = d_ap * std::abs(vx);
    g.d_y = c2 * d_ap * std::abs(vy);
    g.sgn_x = sign_of(vx);
    g.sgn_y = sign_of(vy);
    return g;
}

std::vector<ApLink> aps_within(Topology t, UeLocation ue, double radius, double d_ap) {
    if (radius <= 0.0) throw std::invalid_argument("aps_within: radius must be > 0");
    const auto [c1, c2] = grid_constants(t);
    const Point u = ue_position(t, ue, d_ap);

    // Index bounding box implied by the radius, then filter by true distance.
    const int j_lo = static_cast<int>(std::floor((u.y - radius) / (c2 * d_ap)));
    const int j_hi = static_cast<int>(std::ceil((u.y + radius) / (c2 * d_ap)));
    std::vector<ApLink> out;
    for (int j = j_lo; j <= j_hi; ++j) {
        const int i_lo = static_cast<int>(std::floor((u.x - radius) / d_ap - c1 * j));
        const int i_hi = static_cast<int>(std::ceil((u.x + radius) / d_ap - c1 * j));
        for (int i = i_lo; i <= i_hi; ++i) {
            LinkGeometry g = link_geometry(t, ue, {i, j}, d_ap);
            if (g.d <= radius) out.push_back({{i, j}, g});
        }
    }
    std::sort(out.begin(), out.end(), [](const ApLink& a, const ApLink& b) {
        if (a.link.d != b.link.d) return a.link.d < b.link.d;
        if (a.idx.i != b.idx.i) return a.idx.i < b.idx.i;
        return a.idx.j < b.idx.j;
    });
    return out;
}

std::vector<ApIndex> closer_set(Topology t, UeLocation ue, ApIndex idx, double d_ap,
                                double radius) {
    const double d_ref = link_geometry(t, ue, idx, d_ap).d;
    if (d_ref > radius) throw std::invalid_argument("closer_set: idx outside radius");
    std::vector<ApIndex> out;
    for (const ApLink& al : aps_within(t, ue, radius, d_ap)) {
        if (al.link.d < d_ref) out.push_back(al.idx);
    }
    return out;
}

UeLocation representative_location(Topology t, int which) {
    if (which < 1 || which > 3) throw std::invalid_argument("representative_location: selector must be 1, 2 or 3");
    if (t == Topology::square) {
        switch (which) {
            case 1: return {0.0, 0.0};
            case 2: return {0.25, 0.25};
            default: return {0.5, 0.5};
        }
    }
    if (t == Topology::hexagonal) {
        switch (which) {
            case 1: return {0.0, 0.0};
            case 2: return {1.0 / 6.0, 1.0 / 6.0};
            default: return {1.0 / 3.0, 1.0 / 3.0};
        }
    }
    throw std::invalid_argument("representative_location: topology has no lattice");
}

std::vector<QuadNode> fundamental_region_quadrature(Topology t, int n_points) {
    if (n_points < 4) throw std::invalid_argument("fundamental_region_quadrature: n_points >= 4");
    const auto [c1, c2] = grid_constants(t);

    // x-pieces on which y_th(x) = min(x, 1-4*c1*x) is linear.
    struct Piece {
        double lo, hi;
    };
    std::vector<Piece> pieces;
    if (c1 == 0.0) {
        pieces.push_back({0.0, 0.5});
    } else {
        const double kink = 1.0 / (1.0 + 4.0 * c1); // x == 1-4*c1*x
        pieces.push_back({0.0, kink});
        pieces.push_back({kink, 0.5});
    }

    const int m = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_points)))));
    const double total_width = 0.5;

    std::vector<QuadNode> nodes;
    for (const Piece& pc : pieces) {
        const double width = pc.hi - pc.lo;
        int cols = std::max(1, static_cast<int>(std::lround(m * width / total_width)));
        const double dx = width / cols;
        for (int c = 0; c < cols; ++c) {
            const double x = pc.lo + (c + 0.5) * dx;
            const double y_th = std::min(x, 1.0 - 4.0 * c1 * x);
            if (y_th <= 0.0) continue;
            const double dy = y_th / m;
            for (int r = 0; r < m; ++r) {
                nodes.push_back({{x, (r + 0.5) * dy}, dx * dy});
            }
        }
    }
    return nodes;
}

} // namespace thzcov
