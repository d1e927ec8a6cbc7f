#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "thzcov/geometry.hpp"
#include "thzcov/rng.hpp"

using namespace thzcov;

TEST_CASE("ap positions") {
    const Point a = ap_position(Topology::square, {2, 3}, 15.0);
    CHECK(a.x == doctest::Approx(30.0));
    CHECK(a.y == doctest::Approx(45.0));

    const Point h = ap_position(Topology::hexagonal, {0, 1}, 15.0);
    CHECK(h.x == doctest::Approx(7.5));
    CHECK(h.y == doctest::Approx(12.9904).epsilon(1e-5));

    const Point h2 = ap_position(Topology::hexagonal, {1, 0}, 15.0);
    CHECK(h2.x == doctest::Approx(15.0));
    CHECK(h2.y == doctest::Approx(0.0));
}

TEST_CASE("link geometry examples") {
    const LinkGeometry a = link_geometry(Topology::square, {0.0, 0.0}, {1, 0}, 15.0);
    CHECK(a.d == doctest::Approx(15.0));
    CHECK(a.d_x == doctest::Approx(15.0));
    CHECK(a.d_y == doctest::Approx(0.0));
    CHECK(a.sgn_x == -1); // AP at +x, so the UE-anchored offset x0 - i is negative

    const LinkGeometry b = link_geometry(Topology::square, {0.25, 0.25}, {0, 0}, 15.0);
    CHECK(b.d == doctest::Approx(15.0 * std::sqrt(2.0) / 4.0).epsilon(1e-12));
    CHECK(b.d == doctest::Approx(5.3033).epsilon(1e-4));

    const LinkGeometry c = link_geometry(Topology::hexagonal, {1.0 / 3, 1.0 / 3}, {0, 0}, 15.0);
    CHECK(c.d == doctest::Approx(15.0 * std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    CHECK(c.d == doctest::Approx(8.6603).epsilon(1e-4));
}

TEST_CASE("distance formula agrees with physical positions") {
    rng::Stream s(7, 0, 0);
    for (Topology t : {Topology::square, Topology::hexagonal}) {
        for (int trial = 0; trial < 200; ++trial) {
            const UeLocation ue{s.uniform(0.0, 0.5), s.uniform(0.0, 0.5)};
            const ApIndex idx{static_cast<int>(s.uniform(-6, 6)), static_cast<int>(s.uniform(-6, 6))};
            const double d_ap = s.uniform(1.0, 30.0);
            const Point u = ue_position(t, ue, d_ap);
            const Point a = ap_position(t, idx, d_ap);
            const double d_euclid = std::hypot(u.x - a.x, u.y - a.y);
            const double d_formula = link_geometry(t, ue, idx, d_ap).d;
            CHECK(d_formula == doctest::Approx(d_euclid).epsilon(1e-12));
        }
    }
}

TEST_CASE("aps_within counts and ordering") {
    const auto sq = aps_within(Topology::square, {0.0, 0.0}, 15.0, 15.0);
    CHECK(sq.size() == 5);
    CHECK(sq[0].idx == ApIndex{0, 0});
    CHECK(sq[0].link.d == doctest::Approx(0.0));
    for (std::size_t k = 1; k < sq.size(); ++k) CHECK(sq[k].link.d == doctest::Approx(15.0));

    const auto hex = aps_within(Topology::hexagonal, {0.0, 0.0}, 15.0, 15.0);
    CHECK(hex.size() == 7);
    CHECK(hex[0].idx == ApIndex{0, 0});

    const auto none = aps_within(Topology::square, {0.5, 0.5}, 5.0, 15.0);
    CHECK(none.empty());
}

TEST_CASE("aps_within is monotone in the radius") {
    const auto small = aps_within(Topology::hexagonal, {0.2, 0.1}, 20.0, 15.0);
    const auto big = aps_within(Topology::hexagonal, {0.2, 0.1}, 40.0, 15.0);
    CHECK(big.size() > small.size());
    for (const ApLink& s : small) {
        bool found = false;
        for (const ApLink& b : big)
            if (b.idx == s.idx) found = true;
        CHECK(found);
    }
}

TEST_CASE("lattice symmetry under index negation at the origin") {
    for (Topology t : {Topology::square, Topology::hexagonal}) {
        const auto aps = aps_within(t, {0.0, 0.0}, 40.0, 15.0);
        for (const ApLink& al : aps) {
            const double d_neg =
                link_geometry(t, {0.0, 0.0}, {-al.idx.i, -al.idx.j}, 15.0).d;
            CHECK(d_neg == doctest::Approx(al.link.d).epsilon(1e-12));
        }
    }
}

TEST_CASE("closer_set") {
    CHECK(closer_set(Topology::square, {0.0, 0.0}, {0, 0}, 15.0, 15.0).empty());

    const auto c = closer_set(Topology::square, {0.25, 0.25}, {1, 0}, 15.0, 15.0);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == ApIndex{0, 0});

    // ties at d = 15 are excluded
    const auto t = closer_set(Topology::square, {0.0, 0.0}, {1, 0}, 15.0, 15.0);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == ApIndex{0, 0});
}

TEST_CASE("representative locations") {
    const UeLocation s3 = representative_location(Topology::square, 3);
    CHECK(s3.x0 == doctest::Approx(0.5));
    CHECK(s3.y0 == doctest::Approx(0.5));
    const UeLocation h3 = representative_location(Topology::hexagonal, 3);
    CHECK(h3.x0 == doctest::Approx(1.0 / 3));
    CHECK(h3.y0 == doctest::Approx(1.0 / 3));
    const UeLocation h1 = representative_location(Topology::hexagonal, 1);
    CHECK(h1.x0 == doctest::Approx(0.0));
    CHECK_THROWS_AS(representative_location(Topology::square, 4), std::invalid_argument);
}

namespace {
// Brute-force Riemann estimate of the fundamental-region area.
double region_area_oracle(Topology t, int n) {
    const auto [c1, c2] = grid_constants(t);
    double area = 0.0;
    const double h = 0.5 / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = (i + 0.5) * h;
            const double y = (j + 0.5) * h;
            if (y <= x && y <= 1.0 - 4.0 * c1 * x) area += h * h;
        }
    }
    return area;
}
} // namespace

TEST_CASE("quadrature weights sum to the region area") {
    // Oracle first: the Riemann sums confirm 1/8 and 1/12.
    CHECK(region_area_oracle(Topology::square, 4000) == doctest::Approx(1.0 / 8).epsilon(1e-3));
    CHECK(region_area_oracle(Topology::hexagonal, 4000) == doctest::Approx(1.0 / 12).epsilon(1e-3));

    for (int n : {4, 100, 1024}) {
        double sq = 0.0;
        for (const QuadNode& q : fundamental_region_quadrature(Topology::square, n)) sq += q.weight;
        CHECK(sq == doctest::Approx(1.0 / 8).epsilon(1e-12));
        double hx = 0.0;
        for (const QuadNode& q : fundamental_region_quadrature(Topology::hexagonal, n))
            hx += q.weight;
        CHECK(hx == doctest::Approx(1.0 / 12).epsilon(1e-12));
    }
}

TEST_CASE("quadrature nodes stay inside the region") {
    for (Topology t : {Topology::square, Topology::hexagonal}) {
        const auto [c1, c2] = grid_constants(t);
        for (const QuadNode& q : fundamental_region_quadrature(t, 512)) {
            CHECK(q.ue.x0 > 0.0);
            CHECK(q.ue.x0 < 0.5);
            CHECK(q.ue.y0 > 0.0);
            CHECK(q.ue.y0 < q.ue.x0 + 1e-15);
            CHECK(q.ue.y0 < 1.0 - 4.0 * c1 * q.ue.x0 + 1e-15);
        }
    }
}

TEST_CASE("constant integrand is integrated exactly at any node count") {
    for (Topology t : {Topology::square, Topology::hexagonal}) {
        for (int n : {4, 10000}) {
            double num = 0.0, den = 0.0;
            for (const QuadNode& q : fundamental_region_quadrature(t, n)) {
                num += q.weight * 0.73;
                den += q.weight;
            }
            CHECK(num / den == doctest::Approx(0.73).epsilon(1e-12));
        }
    }
}
