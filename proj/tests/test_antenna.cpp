#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "thzcov/antenna.hpp"
#include "thzcov/rng.hpp"

using namespace thzcov;

namespace {
constexpr double PI = std::numbers::pi;

// Element-wise phase sum over the n x n half-wavelength array; the
// independent oracle for array_factor_loss.
double element_sum_oracle(double theta_v, double theta_h, int n) {
    const double theta = std::hypot(theta_v, theta_h);
    double u1 = 0.0, u2 = 0.0;
    if (theta > 0.0) {
        u1 = std::sin(theta) * theta_v / theta;
        u2 = std::sin(theta) * theta_h / theta;
    }
    std::complex<double> s1 = 0.0, s2 = 0.0;
    for (int a = 0; a < n; ++a) s1 += std::polar(1.0, PI * a * u1);
    for (int b = 0; b < n; ++b) s2 += std::polar(1.0, PI * b * u2);
    const double af = std::abs(s1) * std::abs(s2) / (static_cast<double>(n) * n);
    return af * af;
}

// Adaptive Simpson on [a,b].
double simpson(double (*f)(double, const PointingErrorDist&), const PointingErrorDist& d, double a,
               double b, int n) {
    double s = 0.0;
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        const double x0 = a + i * h, x1 = x0 + h;
        s += (f(x0, d) + 4.0 * f(0.5 * (x0 + x1), d) + f(x1, d)) * h / 6.0;
    }
    return s;
}

} // namespace

TEST_CASE("array factor basics") {
    CHECK(array_factor_loss(0.0, 0.0, 16) == doctest::Approx(1.0));
    CHECK(array_factor_loss(0.0, 0.0, 1) == doctest::Approx(1.0));

    // First null of one factor: sin(theta)*sin(phi) = 2/N.
    const double t = std::asin(2.0 / 16.0);
    CHECK(array_factor_loss(t, 0.0, 16) == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("array factor matches the element phase sum") {
    CHECK(array_factor_loss(0.02, 0.03, 16) ==
          doctest::Approx(element_sum_oracle(0.02, 0.03, 16)).epsilon(1e-10));
    rng::Stream s(3, 0, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const double tv = s.uniform(-0.3, 0.3);
        const double th = s.uniform(-0.3, 0.3);
        const int n = 1 + static_cast<int>(s.uniform(0, 32));
        CHECK(array_factor_loss(tv, th, n) ==
              doctest::Approx(element_sum_oracle(tv, th, n)).epsilon(1e-8));
    }
}

TEST_CASE("array factor symmetry") {
    rng::Stream s(5, 0, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const double tv = s.uniform(-0.2, 0.2);
        const double th = s.uniform(-0.2, 0.2);
        const double v = array_factor_loss(tv, th, 16);
        CHECK(v == doctest::Approx(array_factor_loss(th, tv, 16)).epsilon(1e-12));
        CHECK(v == doctest::Approx(array_factor_loss(-tv, th, 16)).epsilon(1e-12));
        CHECK(v == doctest::Approx(array_factor_loss(tv, -th, 16)).epsilon(1e-12));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("gaussian loss") {
    CHECK(gaussian_loss(0.0, 0.06625) == doctest::Approx(1.0));
    CHECK(gaussian_loss(0.06625, 0.06625) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(gaussian_loss(0.0554, 0.06625) == doctest::Approx(0.49696).epsilon(2e-5));
}

TEST_CASE("pe pdf") {
    const PointingErrorDist d = PointingErrorDist::make(0.0554, 16);
    const double w1 = d.omega_1;

    // top of branch 1: pi*wa^2/(4*wt^2)
    const double expect1 = PI * d.omega_a * d.omega_a / (4.0 * d.omega_t * d.omega_t);
    CHECK(pe_pdf(1.0, d) == doctest::Approx(expect1).epsilon(1e-13));
    CHECK(pe_pdf(1.0, d) == doctest::Approx(1.1232).epsilon(1e-4));

    CHECK(pe_pdf(0.1, d) == 0.0); // below omega_1^2 ~ 0.247
    CHECK(pe_pdf(1.5, d) == 0.0);

    // mass of branch 1 is pi/4
    CHECK(simpson(pe_pdf, d, w1, 1.0, 20000) == doctest::Approx(PI / 4.0).epsilon(1e-8));
}

TEST_CASE("pe pdf integrates to one over the support") {
    rng::Stream s(9, 0, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_a = 4 + static_cast<int>(s.uniform(0, 28));
        const double wa = 1.06 / n_a;
        const double wt = s.uniform(0.3, 1.2) * wa;
        const PointingErrorDist d = PointingErrorDist::from_scales(wt, wa);
        if (d.omega_1 * d.omega_1 < 1e-6) continue;
        const double total = simpson(pe_pdf, d, d.omega_1 * d.omega_1, 1.0, 40000);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("pe cdf") {
    const PointingErrorDist d = PointingErrorDist::make(0.0554, 16);
    const double w1 = d.omega_1;

    CHECK(pe_cdf(1.0, d) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pe_cdf(2.0, d) == 1.0);
    CHECK(pe_cdf(w1, d) == doctest::Approx(1.0 - PI / 4.0).epsilon(1e-9));
    CHECK(pe_cdf(w1 * w1, d) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pe_cdf(w1 * w1 * 0.999, d) == 0.0);

    // CDF equals the integral of the PDF
    rng::Stream s(21, 0, 0);
    for (int i = 0; i < 100; ++i) {
        const double h = s.uniform(w1 * w1, 1.0);
        const double integral = simpson(pe_pdf, d, w1 * w1, h, 20000);
        CHECK(pe_cdf(h, d) == doctest::Approx(integral).epsilon(1e-6));
    }
}

TEST_CASE("pe cdf monotone, pdf nonnegative") {
    const PointingErrorDist d = PointingErrorDist::make(0.07, 16);
    double prev = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        const double h = i / 2000.0 * 1.1;
        const double c = pe_cdf(h, d);
        CHECK(c >= prev - 1e-15);
        CHECK(pe_pdf(h, d) >= 0.0);
        prev = c;
    }
}

TEST_CASE("pe pdf derivative") {
    const PointingErrorDist d = PointingErrorDist::make(0.0554, 16);
    const double w1 = d.omega_1;

    const double expect1 = -PI * d.omega_a * d.omega_a / (4.0 * d.omega_t * d.omega_t);
    CHECK(pe_pdf_derivative(1.0, d) == doctest::Approx(expect1).epsilon(1e-13));
    CHECK(pe_pdf_derivative(0.05, d) == 0.0);
    CHECK(pe_pdf_derivative(1.4, d) == 0.0);

    // central finite differences away from the kinks, both branches
    rng::Stream s(23, 0, 0);
    const double eps = 1e-6;
    for (int i = 0; i < 200; ++i) {
        double h;
        if (i % 2 == 0) h = s.uniform(w1 * 1.02, 0.98);
        else h = s.uniform(w1 * w1 * 1.05, w1 * 0.95);
        const double fd = (pe_pdf(h + eps, d) - pe_pdf(h - eps, d)) / (2.0 * eps);
        CHECK(pe_pdf_derivative(h, d) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("sampling determinism and limits") {
    rng::Stream a(42, 7, rng::BEAM);
    rng::Stream b(42, 7, rng::BEAM);
    for (int i = 0; i < 50; ++i) {
        CHECK(sample_pointing_loss(a, PeModel::gaussian, 0.0554, 16) ==
              sample_pointing_loss(b, PeModel::gaussian, 0.0554, 16));
    }
    rng::Stream c(1, 0, rng::BEAM);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_pointing_loss(c, PeModel::gaussian, 1e-9, 16) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sampled losses follow the closed-form cdf") {
    const PointingErrorDist d = PointingErrorDist::make(0.0554, 16);
    const long n = 200000;
    std::vector<double> samples(n);
    for (long i = 0; i < n; ++i) {
        rng::Stream s(99, i, rng::BEAM);
        samples[i] = sample_pointing_loss(s, PeModel::gaussian, 0.0554, 16);
    }
    std::sort(samples.begin(), samples.end());
    double ks = 0.0;
    for (long i = 0; i < n; ++i) {
        const double f = pe_cdf(samples[i], d);
        ks = std::max(ks, std::abs((i + 1.0) / n - f));
        ks = std::max(ks, std::abs(static_cast<double>(i) / n - f));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("array-factor sampling stays near the gaussian-beam law") {
    const PointingErrorDist d = PointingErrorDist::make(0.0554, 16);
    const long n = 200000;
    std::vector<double> samples(n);
    for (long i = 0; i < n; ++i) {
        rng::Stream s(99, i, rng::BEAM);
        samples[i] = sample_pointing_loss(s, PeModel::array_factor, 0.0554, 16);
    }
    std::sort(samples.begin(), samples.end());
    double ks = 0.0;
    for (long i = 0; i < n; ++i) {
        const double f = pe_cdf(samples[i], d);
        ks = std::max(ks, std::abs((i + 1.0) / n - f));
        ks = std::max(ks, std::abs(static_cast<double>(i) / n - f));
    }
    CHECK(ks < 0.05);
}

TEST_CASE("sidelobe gain") {
    // N = 1: (pi - pi*a)/(pi - a) with a = arcsin(tan(0.25)^2)
    {
        const double a = std::asin(std::tan(0.25) * std::tan(0.25));
        CHECK(sidelobe_gain(1, 0.5, 0.5) ==
              doctest::Approx((PI - PI * a) / (PI - a)).epsilon(1e-14));
    }
    // vanishing mainlobe consumes no power
    CHECK(sidelobe_gain(16, 1e-9, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));

    // Formula value at phi = 2*1.06/16 on both axes; negative because the
    // cone beamwidth is wider than the peak gain allows.
    const double t = std::tan(0.06625) * std::tan(0.06625);
    const double a = std::asin(t);
    const double expect = (PI - 256.0 * PI * a) / (PI - a);
    CHECK(sidelobe_gain(16, 0.1325, 0.1325) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(-0.12706).epsilon(1e-3));

    CHECK_THROWS_AS(sidelobe_gain(4, 3.0, 3.0), std::invalid_argument);
}

TEST_CASE("sidelobe params positive at the default beamwidth scale") {
    const SystemParams p;
    const SidelobeParams s = sidelobe_params(p, 1.0);
    CHECK(s.g_s_ap > 0.0);
    CHECK(s.g_s_ue > 0.0);
    CHECK(s.g_s == doctest::Approx(s.g_s_ap * s.g_s_ue));
    CHECK(s.g_s_ap < M_PI * 256.0);
    CHECK(s.g_s_ue < M_PI * 4.0);
    // the reference-scale choice of twice the beam scale is not physical
    CHECK_THROWS_AS(sidelobe_params(p, 2.0), std::invalid_argument);
}
