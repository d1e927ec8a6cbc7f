#include "thzcov/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace thzcov {

double path_gain(double d, double delta_h, double eps_f) {
    if (d < 0.0) throw std::invalid_argument("path_gain: d >= 0");
    const double r2 = d * d + delta_h * delta_h;
    return std::exp(-eps_f * std::sqrt(r2)) / r2;
}

double serving_power(double d, double h_pe, const SystemParams& p, const DerivedConstants& dc) {
    if (h_pe < 0.0 || h_pe > 1.0) throw std::invalid_argument("serving_power: h_pe in [0,1]");
    return p.p_t * dc.xi * dc.g_max * path_gain(d, dc.delta_h, p.eps_f) * h_pe;
}

double sinr(double serving, double interference, double noise) {
    if (noise <= 0.0) throw std::invalid_argument("sinr: noise > 0");
    if (interference < 0.0) throw std::invalid_argument("sinr: interference >= 0");
    return serving / (interference + noise);
}

} // namespace thzcov
