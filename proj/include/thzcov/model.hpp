#pragma once
#include "thzcov/antenna.hpp"
#include "thzcov/params.hpp"

namespace thzcov {

// Everything the analysis and the simulator consume together: validated
// inputs, derived constants, cone-model sidelobe gains and the lattice
// truncation tolerance. Immutable; safe to share across threads.
struct Model {
    SystemParams p;
    DerivedConstants dc;
    SidelobeParams sl;
    double trunc_epsilon = 1e-15; // W; tail bound target for lattice sums
    double phi_scale = 1.0;

    static Model make(const SystemParams& p, double phi_scale = 1.0,
                      double trunc_epsilon = 1e-15) {
        Model m;
        m.p = p;
        m.dc = derive_constants(p);
        m.sl = sidelobe_params(p, phi_scale);
        m.trunc_epsilon = trunc_epsilon;
        m.phi_scale = phi_scale;
        return m;
    }

    PointingErrorDist pe_dist() const {
        return PointingErrorDist::from_scales(p.omega_t, dc.omega_a);
    }
};

} // namespace thzcov
