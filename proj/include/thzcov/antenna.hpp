#pragma once
#include "thzcov/params.hpp"
#include "thzcov/rng.hpp"

namespace thzcov {

// Distribution of the mainlobe pointing-error loss H_pe after
// finite-resolution beam training: per-axis offsets uniform on
// (-omega_t, omega_t), Gaussian beam shape exp(-theta^2/omega_a^2).
// Support is [omega_1^2, 1] with omega_1 = exp(-omega_t^2/omega_a^2).
struct PointingErrorDist {
    double omega_t;
    double omega_a;
    double omega_1;

    static PointingErrorDist make(double omega_t, int n_a);
    static PointingErrorDist from_scales(double omega_t, double omega_a);
};

double pe_pdf(double h, const PointingErrorDist& dist);
double pe_cdf(double h, const PointingErrorDist& dist);

// d/dh of pe_pdf; at the branch point omega_1 the right-limit is returned.
double pe_pdf_derivative(double h, const PointingErrorDist& dist);

// Normalized planar array-factor loss for an n x n half-wavelength array,
// evaluated at elevation/azimuth offsets (theta_v, theta_h) from boresight.
// Removable singularities of the Dirichlet factors evaluate to their limit.
double array_factor_loss(double theta_v, double theta_h, int n);

// Gaussian-beam mainlobe approximation exp(-theta^2/omega_a^2).
double gaussian_loss(double theta, double omega_a);

enum class PeModel { gaussian, array_factor };

// Draw one pointing loss: offsets uniform per axis, then the selected beam
// shape. Consumes exactly two uniforms from the stream.
double sample_pointing_loss(rng::Stream& stream, PeModel model, double omega_t, int n);

// Cone-model sidelobe gain for an n x n array with mainlobe beamwidths
// (phi_v, phi_h); the power-conservation form, evaluated exactly as written
// (callers must check positivity for physical use).
double sidelobe_gain(int n, double phi_v, double phi_h);

struct SidelobeParams {
    double phi_v;   // AP mainlobe beamwidth used in the cone model, rad
    double phi_h;
    double g_s_ap;  // AP-side sidelobe gain
    double g_s_ue;  // UE-side sidelobe gain
    double g_s;     // product
};

// Builds the cone-model sidelobe gains with per-array beamwidths
// phi = phi_scale * (1.06/n). Throws if either gain is non-positive
// (beamwidth inconsistent with the array's peak gain).
SidelobeParams sidelobe_params(const SystemParams& p, double phi_scale);

} // namespace thzcov
