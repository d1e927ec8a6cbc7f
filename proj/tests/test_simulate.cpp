#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "thzcov/blockage.hpp"
#include "thzcov/simulate.hpp"

using namespace thzcov;

namespace {
Model table_model() { return Model::make(SystemParams{}); }
}

TEST_CASE("poisson sampler moments") {
    for (double mean : {0.5, 4.0, 25.0, 80.0, 600.0}) {
        const long n = 40000;
        double s = 0.0, s2 = 0.0;
        rng::Stream st(7, 0, 1);
        for (long i = 0; i < n; ++i) {
            const double k = static_cast<double>(st.poisson(mean));
            s += k;
            s2 += k * k;
        }
        const double m1 = s / n;
        const double var = s2 / n - m1 * m1;
        const double se_mean = std::sqrt(mean / n);
        CHECK(std::abs(m1 - mean) < 4.0 * se_mean);
        CHECK(std::abs(var - mean) / mean < 0.1); // var(Poisson) = mean
    }
    rng::Stream st(7, 0, 1);
    CHECK(st.poisson(0.0) == 0);
}

TEST_CASE("scene realization is deterministic and honors the wall density") {
    const Model m = table_model();
    const SimContext ctx(m, {0.25, 0.25});
    const Scene a = realize_scene(5, 123, ctx);
    const Scene b = realize_scene(5, 123, ctx);
    CHECK(a.walls_x == b.walls_x);
    CHECK(a.walls_y == b.walls_y);
    REQUIRE(a.humans.size() == b.humans.size());
    for (std::size_t i = 0; i < a.humans.size(); ++i) {
        CHECK(a.humans[i].x == b.humans[i].x);
        CHECK(a.humans[i].y == b.humans[i].y);
    }
    const Scene c = realize_scene(5, 124, ctx);
    CHECK(a.walls_x != c.walls_x);

    // Poisson moment oracles against the stored generation windows
    const long n = 20000;
    double walls = 0.0, humans = 0.0;
    for (long t = 0; t < n; ++t) {
        const Scene s = realize_scene(11, t, ctx);
        walls += static_cast<double>(s.walls_x.size());
        humans += static_cast<double>(s.humans.size());
    }
    const double wall_mean = m.p.lambda_w * (a.wall_x_hi - a.wall_x_lo);
    const double human_mean =
        m.p.lambda_b * (a.human_hi_x - a.human_lo_x) * (a.human_hi_y - a.human_lo_y);
    CHECK(std::abs(walls / n - wall_mean) < 4.0 * std::sqrt(wall_mean / n));
    CHECK(std::abs(humans / n - human_mean) < 4.0 * std::sqrt(human_mean / n));
}

TEST_CASE("no wall density means no walls") {
    SystemParams p;
    p.lambda_w = 0.0;
    const Model m = Model::make(p);
    const SimContext ctx(m, {0.25, 0.25});
    for (long t = 0; t < 50; ++t) {
        const Scene s = realize_scene(1, t, ctx);
        CHECK(s.walls_x.empty());
        CHECK(s.walls_y.empty());
    }
}

TEST_CASE("wall blocking uses strict betweenness") {
    Scene s;
    const Point ue{3.75, 3.75};
    const Point ap{15.0, 0.0};
    CHECK_FALSE(wall_blocked(s, ue, ap)); // no walls at all
    s.walls_x = {3.75};                   // exactly at the UE: not blocking
    CHECK_FALSE(wall_blocked(s, ue, ap));
    s.walls_x = {15.0}; // exactly at the AP: not blocking
    CHECK_FALSE(wall_blocked(s, ue, ap));
    s.walls_x = {9.0};
    CHECK(wall_blocked(s, ue, ap));
    s.walls_x = {};
    s.walls_y = {1.3};
    CHECK(wall_blocked(s, ue, ap));
}

TEST_CASE("empirical wall blocking matches the marginal") {
    SystemParams p;
    p.lambda_b = 0.0; // walls only, fast scenes
    const Model m = Model::make(p);
    const UeLocation ue{0.25, 0.25};
    const SimContext ctx(m, ue, p.r_a);
    const Point u = ctx.ue_point();
    const Point ap = ap_position(Topology::square, {1, 0}, p.d_ap);
    const LinkGeometry g = link_geometry(Topology::square, ue, {1, 0}, p.d_ap);
    const double p_w = wall_unblocked(g.d_x, g.d_y, p.lambda_w);

    const long n = 100000;
    long unblocked = 0;
    for (long t = 0; t < n; ++t) {
        const Scene s = realize_scene(3, t, ctx);
        if (!wall_blocked(s, u, ap)) ++unblocked;
    }
    const double freq = static_cast<double>(unblocked) / n;
    CHECK(std::abs(freq - p_w) < 4.0 * std::sqrt(p_w * (1.0 - p_w) / n));
}

TEST_CASE("human blocking zone") {
    const double zone_frac = 0.4 / 1.7;
    Scene s;
    const Point ue{0.0, 0.0};
    CHECK_FALSE(human_blocked(s, ue, {15.0, 0.0}, 0.25, zone_frac)); // nobody around
    s.humans = {{1.0, 0.0}};
    CHECK(human_blocked(s, ue, {15.0, 0.0}, 0.25, zone_frac)); // inside the zone
    CHECK_FALSE(human_blocked(s, ue, ue, 0.25, zone_frac));    // overhead AP, no zone
    s.humans = {{1.0, 0.3}};
    CHECK_FALSE(human_blocked(s, ue, {15.0, 0.0}, 0.25, zone_frac)); // off to the side
    s.humans = {{4.0, 0.0}};
    // zone ends at 15*0.4/1.7 = 3.53 m from the UE
    CHECK_FALSE(human_blocked(s, ue, {15.0, 0.0}, 0.25, zone_frac));
    s.humans = {{-1.0, 0.0}};
    CHECK_FALSE(human_blocked(s, ue, {15.0, 0.0}, 0.25, zone_frac)); // behind the UE
}

TEST_CASE("empirical human blocking matches the marginal") {
    SystemParams p;
    p.lambda_w = 0.0; // humans only
    const Model m = Model::make(p);
    const UeLocation ue{0.25, 0.25};
    const SimContext ctx(m, ue, p.r_a);
    const Point u = ctx.ue_point();
    const Point ap = ap_position(Topology::square, {1, 0}, p.d_ap);
    const LinkGeometry g = link_geometry(Topology::square, ue, {1, 0}, p.d_ap);
    const double p_h = human_unblocked(g.d, m.dc.alpha);

    const long n = 60000;
    long unblocked = 0;
    for (long t = 0; t < n; ++t) {
        const Scene s = realize_scene(13, t, ctx);
        if (!human_blocked(s, u, ap, p.r_b, ctx.zone_fraction())) ++unblocked;
    }
    const double freq = static_cast<double>(unblocked) / n;
    CHECK(std::abs(freq - p_h) < 4.0 * std::sqrt(p_h * (1.0 - p_h) / n));
}

TEST_CASE("trial edge cases") {
    { // nothing ever blocks from under the AP
        SystemParams p;
        p.lambda_w = 0.0;
        p.lambda_b = 0.0;
        const Model m = Model::make(p);
        const SimContext ctx(m, {0.0, 0.0});
        for (long t = 0; t < 20; ++t) {
            const TrialOutcome o =
                run_trial(1, t, ctx, PeModel::gaussian, HumanModel::independent);
            REQUIRE(o.associated.has_value());
            CHECK(*o.associated == ApIndex{0, 0});
            CHECK(o.sinr > 0.0);
        }
    }
    { // wall density so high that nothing within reach survives
        SystemParams p;
        p.lambda_w = 3.0;
        const Model m = Model::make(p);
        const SimContext ctx(m, {0.25, 0.25}, p.r_a);
        int no_assoc = 0;
        for (long t = 0; t < 30; ++t) {
            const TrialOutcome o = run_trial(1, t, ctx, PeModel::gaussian, HumanModel::scene);
            if (!o.associated) {
                CHECK(o.sinr == 0.0);
                ++no_assoc;
            }
        }
        CHECK(no_assoc == 30);
    }
}

TEST_CASE("association frequencies track the closed form") {
    for (HumanModel hm : {HumanModel::independent, HumanModel::scene}) {
        const Model m = table_model();
        const UeLocation ue = representative_location(Topology::square, 2);
        SimOptions opt;
        opt.n_trials = 100000;
        opt.seed = 21;
        opt.human_model = hm;
        const AssociationFrequency f = estimate_association(m, ue, opt);
        const AssociationTable tab = association_table(m, ue);
        REQUIRE(f.entries.size() == tab.entries.size());
        for (std::size_t i = 0; i < tab.entries.size(); ++i) {
            const double pa = tab.entries[i].prob;
            const double tol =
                4.0 * std::sqrt(std::max(pa * (1.0 - pa), 1e-6) / opt.n_trials) + 2e-3;
            CHECK(std::abs(f.entries[i].prob - pa) < tol);
        }
        CHECK(std::abs(f.total - tab.total) <
              4.0 * std::sqrt(tab.total * (1.0 - tab.total) / opt.n_trials) + 2e-3);
    }
}

TEST_CASE("coverage estimator") {
    const Model m = table_model();
    const UeLocation ue = representative_location(Topology::square, 2);
    SimOptions opt;
    opt.n_trials = 50000;
    opt.seed = 4;

    { // beta -> 0 recovers the association probability
        const Estimate e = estimate_coverage(m, ue, 1e-12, opt);
        const double pa = association_table(m, ue).total;
        CHECK(std::abs(e.mean - pa) < 4.0 * std::sqrt(pa * (1.0 - pa) / opt.n_trials));
    }
    { // independent seeds agree within their joint uncertainty
        SimOptions o2 = opt;
        o2.seed = 999;
        const Estimate a = estimate_coverage(m, ue, db_to_linear(20.0), opt);
        const Estimate b = estimate_coverage(m, ue, db_to_linear(20.0), o2);
        CHECK(std::abs(a.mean - b.mean) < 1.6 * (a.half_width_95 + b.half_width_95));
    }
    { // bitwise identical across worker counts
        SimOptions one = opt, four = opt;
        one.threads = 1;
        four.threads = 4;
        const double betas[] = {db_to_linear(10.0), db_to_linear(20.0)};
        const auto a = estimate_coverage_curve(m, ue, betas, one);
        const auto b = estimate_coverage_curve(m, ue, betas, four);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(a[i].mean == b[i].mean);
            CHECK(a[i].half_width_95 == b[i].half_width_95);
        }
    }
}

TEST_CASE("interference moment estimator") {
    const Model m = table_model();
    SimOptions opt;
    opt.n_trials = 30000;
    opt.seed = 17;

    { // deterministic interference when nothing blocks
        SystemParams p;
        p.lambda_w = 0.0;
        p.lambda_b = 0.0;
        const Model m0 = Model::make(p);
        const MomentEstimate e = estimate_interference_moments(m0, {0.0, 0.0}, {0, 0}, opt);
        CHECK(e.accepted == opt.n_trials);
        CHECK(e.mean.mean > 0.0);
        CHECK(e.variance.mean < 1e-38);
    }
    { // exact linear/quadratic scaling in transmit power (same seeds)
        SystemParams p2 = m.p;
        p2.p_t *= 2.0;
        const Model m2 = Model::make(p2);
        const MomentEstimate a = estimate_interference_moments(m, {0.0, 0.0}, {0, 0}, opt);
        const MomentEstimate b = estimate_interference_moments(m2, {0.0, 0.0}, {0, 0}, opt);
        CHECK(b.mean.mean == doctest::Approx(2.0 * a.mean.mean).epsilon(1e-12));
        CHECK(b.variance.mean == doctest::Approx(4.0 * a.variance.mean).epsilon(1e-9));
    }
    { // bitwise identical across worker counts
        SimOptions one = opt, four = opt;
        one.threads = 1;
        four.threads = 4;
        const MomentEstimate a = estimate_interference_moments(m, {0.25, 0.25}, {0, 0}, one);
        const MomentEstimate b = estimate_interference_moments(m, {0.25, 0.25}, {0, 0}, four);
        CHECK(a.mean.mean == b.mean.mean);
        CHECK(a.variance.mean == b.variance.mean);
        CHECK(a.accepted == b.accepted);
    }
}

TEST_CASE("ppp baseline") {
    const Model m = table_model();
    SimOptions opt;
    opt.n_trials = 4000;
    opt.seed = 9;

    { // vanishing density: links too long, no coverage at 20 dB
        const Estimate e = ppp_baseline_coverage(1e-5, db_to_linear(20.0), m, opt);
        CHECK(e.mean < 0.05);
    }
    { // bitwise identical across worker counts
        SimOptions one = opt, four = opt;
        one.threads = 1;
        four.threads = 4;
        const Estimate a = ppp_baseline_coverage(0.01, db_to_linear(20.0), m, one);
        const Estimate b = ppp_baseline_coverage(0.01, db_to_linear(20.0), m, four);
        CHECK(a.mean == b.mean);
    }
}

TEST_CASE("pointing-loss sampling is reproducible per index") {
    const auto a = sample_pointing_losses(0.0554, 16, PeModel::gaussian, 100, 5);
    const auto b = sample_pointing_losses(0.0554, 16, PeModel::gaussian, 100, 5);
    CHECK(a == b);
    const auto c = sample_pointing_losses(0.0554, 16, PeModel::gaussian, 100, 6);
    CHECK(a != c);
}
