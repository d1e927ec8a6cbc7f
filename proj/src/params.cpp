#include "thzcov/params.hpp"

#include <numbers>
#include <stdexcept>

namespace thzcov {

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::square: return "square";
        case Topology::hexagonal: return "hexagonal";
        case Topology::ppp: return "ppp";
    }
    return "?";
}

Topology topology_from_name(const std::string& name) {
    if (name == "square") return Topology::square;
    if (name == "hexagonal") return Topology::hexagonal;
    if (name == "ppp") return Topology::ppp;
    throw std::invalid_argument("unknown topology '" + name + "' (square|hexagonal|ppp)");
}

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid SystemParams: ") + what);
}
} // namespace

void validate(const SystemParams& p) {
    require(p.h_u > 0 && p.h_b > 0 && p.h_a > 0, "heights must be positive");
    require(p.h_u < p.h_b && p.h_b < p.h_a, "h_u < h_b < h_a");
    require(p.r_b > 0, "r_b > 0");
    require(p.lambda_b >= 0, "lambda_b >= 0");
    require(p.lambda_w >= 0, "lambda_w >= 0");
    require(p.d_ap > 0, "d_ap > 0");
    require(p.r_a > 0, "r_a > 0");
    require(p.n_a >= 1 && p.n_u >= 1, "antenna counts >= 1");
    require(p.n_a >= p.n_u, "n_a >= n_u");
    require(p.f > 0, "f > 0");
    require(p.b > 0, "b > 0");
    require(p.eps_f >= 0, "eps_f >= 0");
    require(p.p_t > 0, "p_t > 0");
    require(p.n_0 > 0, "n_0 > 0");
    require(p.omega_t > 0 && p.omega_t < std::numbers::pi / 2, "omega_t in (0, pi/2)");
    require(p.n_rf >= 1, "n_rf >= 1");
    require(p.beta_ct > 0, "beta_ct > 0");
}

DerivedConstants derive_constants(const SystemParams& p) {
    validate(p);
    DerivedConstants dc{};
    dc.delta_h = p.h_a - p.h_u;
    dc.alpha = 2.0 * p.lambda_b * p.r_b * (p.h_b - p.h_u) / dc.delta_h;
    const double denom = 4.0 * std::numbers::pi * p.f;
    dc.xi = (SPEED_OF_LIGHT / denom) * (SPEED_OF_LIGHT / denom);
    dc.omega_a = 1.06 / static_cast<double>(p.n_a);
    const double r = p.omega_t / dc.omega_a;
    dc.omega_1 = std::exp(-r * r);
    dc.g_a_max = std::numbers::pi * static_cast<double>(p.n_a) * static_cast<double>(p.n_a);
    dc.g_u_max = std::numbers::pi * static_cast<double>(p.n_u) * static_cast<double>(p.n_u);
    dc.g_max = dc.g_a_max * dc.g_u_max;
    return dc;
}

} // namespace thzcov
