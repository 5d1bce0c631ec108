#pragma once

#include <vector>

#include "conemetric/divisor.hpp"
#include "conemetric/field.hpp"

namespace conemetric {

// Divisor point pinned to torus lattice coordinates (a, b) in [0, 1)^2,
// sitting at z = a + tau b in the flat chart.
struct TorusPoint {
    std::string label;
    double beta = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct TorusDivisor {
    std::vector<TorusPoint> points;

    double sum_orders() const;
    Divisor divisor() const; // genus-1 view for the hypothesis checkers
};

// 13th-order polynomial step: 0 -> 1 on [0, 1] with six vanishing
// derivatives at both ends. The blending radius profile must be this smooth
// for the solver's right-hand side to stay resolvable on desk-scale grids;
// lower-order steps leave grid-visible curvature kinks at the annulus edges.
double smoothstep13(double t);
double smoothstep13_d1(double t);
double smoothstep13_d2(double t);

// Singular background g1 = rho g0 carrying the exact cone behavior:
// rho = |z - p|^{2 beta} inside each half-radius disk, blended to 1 across
// the annulus [delta/2, delta] by the step above.
struct BackgroundMetric {
    TorusGrid grid;
    TorusDivisor divisor;        // snapped to grid nodes
    std::vector<double> delta;   // blending radius per point
    ScalarField w0;              // log conformal factor of g1 over g0
    ScalarField rho;             // e^{2 w0}
    ScalarField K1;              // curvature of g1, supported in the annuli
    ScalarField rhoK1;           // rho K1 = Delta0 w0, the Liouville RHS
    // raw per-point quadrature defect of the compatibility integral before
    // the in-annulus correction (recorded for reproducibility)
    std::vector<double> raw_compat_defects;

    // nodes at min-image distance >= factor * delta_i from every point i
    std::vector<bool> region_mask(double factor) const;
};

// Builds w0 = sum beta_i chi(r_i) log r_i and its exact analytic
// Delta0 image, then corrects each point's annulus samples by a smooth
// radial bump so the lattice compatibility integral of rho K1 equals
// 2 pi sum(beta) to rounding. The correction is radial and supported in the
// open annulus, so the exterior field and the half-radius disks are
// untouched (a radial source acts outside itself purely through its total
// mass).
//
// Preconditions: points pairwise separated by more than 4 delta, delta
// above four node spacings, blending disks embedded in the torus.
BackgroundMetric build_background(const TorusDivisor& d, double delta,
                                  const TorusGrid& grid);

} // namespace conemetric
