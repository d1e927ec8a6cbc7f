#pragma once
#include "thzcov/params.hpp"

namespace thzcov {

// Large-scale THz gain at horizontal distance d: spreading over the 3D
// distance plus molecular absorption.
double path_gain(double d, double delta_h, double eps_f);

// Received mainlobe power P_t * xi * G_max * W(d) * h_pe.
double serving_power(double d, double h_pe, const SystemParams& p, const DerivedConstants& dc);

double sinr(double serving, double interference, double noise);

} // namespace thzcov
