#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "thzcov/params.hpp"

using namespace thzcov;

TEST_CASE("derived constants at reference settings") {
    const SystemParams p;
    const DerivedConstants dc = derive_constants(p);

    CHECK(dc.delta_h == doctest::Approx(1.7).epsilon(1e-15));
    // 2 * 0.1 * 0.25 * 0.4 / 1.7
    CHECK(dc.alpha == doctest::Approx(0.02 / 1.7).epsilon(1e-14));
    CHECK(dc.alpha == doctest::Approx(0.0117647).epsilon(1e-5));
    CHECK(dc.omega_a == doctest::Approx(1.06 / 16.0).epsilon(1e-15));
    CHECK(dc.omega_1 == doctest::Approx(std::exp(-std::pow(0.0554 / 0.066250, 2))).epsilon(1e-14));
    CHECK(dc.omega_1 == doctest::Approx(0.49696).epsilon(2e-5));
    // (3e8)^2 / (4*pi*3e11)^2
    CHECK(dc.xi == doctest::Approx(6.3326e-9).epsilon(1e-4));
    CHECK(dc.g_a_max == doctest::Approx(M_PI * 256.0).epsilon(1e-15));
    CHECK(dc.g_u_max == doctest::Approx(M_PI * 4.0).epsilon(1e-15));
    CHECK(dc.g_max == doctest::Approx(dc.g_a_max * dc.g_u_max).epsilon(1e-15));
}

TEST_CASE("no humans means no human blockage rate") {
    SystemParams p;
    p.lambda_b = 0.0;
    CHECK(derive_constants(p).alpha == 0.0);
}

TEST_CASE("alpha is linear in lambda_b and r_b") {
    SystemParams p;
    const double a0 = derive_constants(p).alpha;
    p.lambda_b *= 2.0;
    CHECK(derive_constants(p).alpha == doctest::Approx(2.0 * a0).epsilon(1e-14));
    p.lambda_b /= 2.0;
    p.r_b *= 2.0;
    CHECK(derive_constants(p).alpha == doctest::Approx(2.0 * a0).epsilon(1e-14));
}

TEST_CASE("omega_1 monotone in omega_t and omega_a") {
    SystemParams p;
    double prev = derive_constants(p).omega_1;
    for (double wt : {0.06, 0.07, 0.08}) {
        p.omega_t = wt;
        const double cur = derive_constants(p).omega_1;
        CHECK(cur < prev); // strictly decreasing in omega_t
        prev = cur;
    }
    // At fixed omega_t a larger array narrows omega_a, so the boundary loss
    // omega_1 = exp(-omega_t^2/omega_a^2) strictly decreases in n_a.
    p.omega_t = 0.0554;
    prev = 2.0;
    for (int n : {8, 16, 32, 64}) {
        p.n_a = n;
        const double cur = derive_constants(p).omega_1;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("dBm round trip") {
    for (double dbm : {-77.0, -30.0, 0.0, 5.0, 23.0}) {
        CHECK(watts_to_dbm(dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
    }
    CHECK(dbm_to_watts(5.0) == doctest::Approx(3.1623e-3).epsilon(1e-4));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("validation names the violated invariant") {
    SystemParams p;
    p.h_u = 5.0; // above the ceiling
    CHECK_THROWS_WITH_AS(validate(p), "invalid SystemParams: h_u < h_b < h_a",
                         std::invalid_argument);
    p = SystemParams{};
    p.d_ap = -1.0;
    CHECK_THROWS_WITH_AS(validate(p), "invalid SystemParams: d_ap > 0", std::invalid_argument);
    p = SystemParams{};
    p.omega_t = 2.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = SystemParams{};
    p.n_u = 32; // larger than n_a
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("zero densities are allowed") {
    SystemParams p;
    p.lambda_b = 0.0;
    p.lambda_w = 0.0;
    CHECK_NOTHROW(validate(p));
}
