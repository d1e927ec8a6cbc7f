#pragma once
#include <cmath>
#include <string>

namespace thzcov {

enum class Topology { square, hexagonal, ppp };

std::string topology_name(Topology t);
Topology topology_from_name(const std::string& name);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Speed of light as used throughout the channel constants.
constexpr double SPEED_OF_LIGHT = 3.0e8;

// Full set of system inputs for one run. Powers are stored in watts and the
// training SINR threshold in linear scale; dBm/dB conversion happens once at
// the config boundary. Immutable after construction by convention.
struct SystemParams {
    double h_a = 3.0;        // AP (ceiling) height, m
    double h_u = 1.3;        // UE height, m
    double h_b = 1.7;        // human body height, m
    double r_b = 0.25;       // human body radius, m
    double lambda_b = 0.1;   // human density, m^-2
    double lambda_w = 0.02;  // wall line density per axis, m^-1
    double d_ap = 15.0;      // inter-AP spacing, m
    double r_a = 15.0;       // association/coverage radius, m
    int n_a = 16;            // AP array size per side
    int n_u = 2;             // UE array size per side
    double f = 300e9;        // carrier frequency, Hz
    double b = 5e9;          // bandwidth, Hz (carried for completeness; unused in computation)
    double eps_f = 0.00143;  // molecular absorption coefficient, m^-1
    double p_t = dbm_to_watts(5.0);    // transmit power, W (5 dBm)
    double n_0 = dbm_to_watts(-77.0);  // noise power, W (-77 dBm)
    double omega_t = 0.0554; // training beam half-width per axis, rad
    int n_rf = 6;            // RF chains per AP
    double beta_ct = db_to_linear(10.0); // training SINR threshold, linear (10 dB)
    Topology topology = Topology::square;
};

// Constants derived once from SystemParams and shared by every module.
struct DerivedConstants {
    double delta_h;  // h_a - h_u, m
    double alpha;    // human-blockage rate 2*lambda_b*r_b*(h_b-h_u)/delta_h, m^-1
    double xi;       // (c/(4*pi*f))^2
    double omega_a;  // Gaussian beam angular scale 1.06/n_a, rad
    double omega_1;  // exp(-omega_t^2/omega_a^2), in (0,1)
    double g_a_max;  // pi*n_a^2
    double g_u_max;  // pi*n_u^2
    double g_max;    // g_a_max*g_u_max
};

// Throws std::invalid_argument naming the violated invariant.
void validate(const SystemParams& p);

// Validates, then fills every derived field from its defining identity.
DerivedConstants derive_constants(const SystemParams& p);

} // namespace thzcov
