#include "thzcov/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace thzcov {

namespace {
constexpr double PI = std::numbers::pi;
} // namespace

PointingErrorDist PointingErrorDist::make(double omega_t, int n_a) {
    return from_scales(omega_t, 1.06 / static_cast<double>(n_a));
}

PointingErrorDist PointingErrorDist::from_scales(double omega_t, double omega_a) {
    if (omega_t <= 0.0 || omega_a <= 0.0)
        throw std::invalid_argument("PointingErrorDist: scales must be positive");
    const double r = omega_t / omega_a;
    return {omega_t, omega_a, std::exp(-r * r)};
}

double pe_pdf(double h, const PointingErrorDist& dist) {
    const double w1 = dist.omega_1;
    const double wa2 = dist.omega_a * dist.omega_a;
    const double wt2 = dist.omega_t * dist.omega_t;
    if (h >= w1 && h <= 1.0) {
        return PI * wa2 / (4.0 * wt2 * h);
    }
    if (h >= w1 * w1 && h < w1) {
        const double s = -wa2 * std::log(h); // in [wt2, 2*wt2] on this branch
        const double rho1 = std::asin(std::min(1.0, dist.omega_t / std::sqrt(s)));
        return wa2 / (wt2 * h) * (rho1 - PI / 4.0);
    }
    return 0.0;
}

double pe_cdf(double h, const PointingErrorDist& dist) {
    const double w1 = dist.omega_1;
    const double wa2 = dist.omega_a * dist.omega_a;
    const double wt2 = dist.omega_t * dist.omega_t;
    if (h > 1.0) return 1.0;
    if (h >= w1) {
        return 1.0 + PI * wa2 * std::log(h) / (4.0 * wt2);
    }
    if (h >= w1 * w1) {
        const double s = -wa2 * std::log(h);
        const double rho1 = std::asin(std::min(1.0, dist.omega_t / std::sqrt(s)));
        const double rho2 = std::sqrt(std::max(0.0, s - wt2)) / dist.omega_t;
        return 1.0 + wa2 * std::log(h) / wt2 * (rho1 - PI / 4.0) - rho2;
    }
    return 0.0;
}

double pe_pdf_derivative(double h, const PointingErrorDist& dist) {
    const double w1 = dist.omega_1;
    const double wa2 = dist.omega_a * dist.omega_a;
    const double wt2 = dist.omega_t * dist.omega_t;
    if (h >= w1 && h <= 1.0) {
        return -PI * wa2 / (4.0 * wt2 * h * h);
    }
    if (h >= w1 * w1 && h < w1) {
        const double lnh = std::log(h);
        const double s = -wa2 * lnh;
        const double rho1 = std::asin(std::min(1.0, dist.omega_t / std::sqrt(s)));
        const double rho2 = std::sqrt(std::max(0.0, s - wt2)) / dist.omega_t;
        if (rho2 == 0.0) return -std::numeric_limits<double>::infinity();
        return -wa2 / (wt2 * h * h) * (rho1 - PI / 4.0) - wa2 / (2.0 * wt2 * h * h * rho2 * lnh);
    }
    return 0.0;
}

namespace {
// sin(n*x)/(n*sin(x)) with the limit value near the removable singularities
// x = m*pi (both numerator and denominator vanish there).
double dirichlet_kernel(double u, int n) {
    const double x = PI * u / 2.0;
    const double den = std::sin(x);
    if (std::abs(den) < 1e-9) return std::cos(n * x) / std::cos(x);
    return std::sin(n * x) / (n * den);
}
} // namespace

double array_factor_loss(double theta_v, double theta_h, int n) {
    if (n < 1) throw std::invalid_argument("array_factor_loss: n >= 1");
    const double theta = std::hypot(theta_v, theta_h);
    double u1 = 0.0, u2 = 0.0;
    if (theta > 0.0) {
        const double s = std::sin(theta);
        u1 = s * theta_v / theta; // sin(theta)*sin(phi)
        u2 = s * theta_h / theta; // sin(theta)*cos(phi)
    }
    const double f = dirichlet_kernel(u1, n) * dirichlet_kernel(u2, n);
    return f * f;
}

double gaussian_loss(double theta, double omega_a) {
    if (theta < 0.0) throw std::invalid_argument("gaussian_loss: theta >= 0");
    const double r = theta / omega_a;
    return std::exp(-r * r);
}

double sample_pointing_loss(rng::Stream& stream, PeModel model, double omega_t, int n) {
    const double th = stream.uniform(-omega_t, omega_t);
    const double tv = stream.uniform(-omega_t, omega_t);
    if (model == PeModel::gaussian) {
        return gaussian_loss(std::hypot(th, tv), 1.06 / static_cast<double>(n));
    }
    return array_factor_loss(tv, th, n);
}

double sidelobe_gain(int n, double phi_v, double phi_h) {
    if (phi_v <= 0.0 || phi_v >= PI || phi_h <= 0.0 || phi_h >= PI)
        throw std::invalid_argument("sidelobe_gain: beamwidths in (0, pi)");
    const double t = std::tan(phi_v / 2.0) * std::tan(phi_h / 2.0);
    if (t < -1.0 || t > 1.0)
        throw std::invalid_argument("sidelobe_gain: arcsin argument outside [-1,1]");
    const double a = std::asin(t);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    return (PI - n2 * PI * a) / (PI - a);
}

SidelobeParams sidelobe_params(const SystemParams& p, double phi_scale) {
    SidelobeParams s{};
    s.phi_v = phi_scale * 1.06 / static_cast<double>(p.n_a);
    s.phi_h = s.phi_v;
    s.g_s_ap = sidelobe_gain(p.n_a, s.phi_v, s.phi_h);
    const double phi_ue = phi_scale * 1.06 / static_cast<double>(p.n_u);
    s.g_s_ue = sidelobe_gain(p.n_u, phi_ue, phi_ue);
    s.g_s = s.g_s_ap * s.g_s_ue;
    if (s.g_s_ap <= 0.0 || s.g_s_ue <= 0.0)
        throw std::invalid_argument(
            "sidelobe_params: non-positive sidelobe gain; mainlobe beamwidth (sidelobe.phi_scale) "
            "is too wide for the array's peak gain");
    return s;
}

} // namespace thzcov
