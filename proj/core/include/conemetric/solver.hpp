#pragma once

#include <cstdint>
#include <optional>

#include "conemetric/background.hpp"
#include "conemetric/poisson.hpp"

namespace conemetric {

struct ConeAngleError {
    std::string label;
    double theta_expected;  // 2 pi (1 + beta)
    double theta_estimated; // holonomy extraction from metric circle lengths
    double error;
};

struct GaussBonnetQuadrature {
    double total;    // lattice integral of K dA over the solved metric
    double expected; // 2 pi chi(S, beta)
    double residual;
};

struct SolveReport {
    std::string mode; // "flat" or "curvature"
    TorusGrid grid;
    TorusDivisor divisor;      // as snapped to nodes
    std::vector<double> delta;
    std::string cutoff = "smoothstep13";
    int iterations = 0;
    double residual_sup = 0.0;        // sup of the solved equation's residual
    double curvature_error_sup = 0.0; // independent finite-difference check
    // curvature_error_sup is taken over nodes at least this multiple of
    // delta away from every singular point; fourth-order stencils are
    // meaningless closer to the blending annulus
    double curvature_region_factor = 2.0;
    std::vector<ConeAngleError> cone_angle_errors;
    std::vector<double> newton_history; // sup|F| at each Newton step
    std::vector<double> raw_compat_defects;
    GaussBonnetQuadrature gauss_bonnet{0.0, 0.0, 0.0};
    double newton_tolerance = 1e-10;
    std::optional<std::uint64_t> seed; // set when the initial guess was seeded

    ScalarField u;       // mean-zero conformal factor over the background
    ScalarField w_total; // u + w0: the full log factor over |dz|^2
};

// Discrete Delta0 by fourth-order centered stencils in the lattice
// directions (cross term present only for oblique tau). Independent of the
// spectral operator, so it can audit spectral solutions.
ScalarField fd4_delta0(const ScalarField& u);

// sup over the masked region of |e^{-2 wt} Delta0_fd(wt) - K_target|,
// with the background part of Delta0(wt) supplied analytically and the
// grid part measured by fd4_delta0. Pass K_target = nullptr for zero.
double curvature_deviation_sup(const BackgroundMetric& bg, const ScalarField& u,
                               const ScalarField* K_target, double region_factor = 2.0);

// Cone angles by holonomy: metric circle lengths at radii delta/8, delta/4,
// delta/2 around each point. L(eps) grows like eps^{theta/2pi}, so the two
// dyadic log-slopes s1, s2 Richardson-combine to
// theta_hat = 2 pi (4 s1 - s2) / 3.
std::vector<ConeAngleError> holonomy_cone_angles(const BackgroundMetric& bg,
                                                 const ScalarField& u);

// Flat representative of a zero-chi divisor: solves Delta0 u = -rho K1 and
// reports the independent diagnostics. Mean-zero u fixes the homothety.
SolveReport flat_metric(const TorusDivisor& d, const TorusGrid& grid, double delta);

// Green's-function oracle: w with Delta0 w = -2 pi sum beta_i (delta_i - 1/A),
// so e^{2w}|dz|^2 is the exact lattice flat metric for the divisor.
ScalarField flat_metric_exact(const TorusDivisor& d, const TorusGrid& grid);

// Prescribed nonpositive curvature on a chi < 0 divisor: Newton iteration
// on F(u) = Delta0 u - rho K e^{2u} + rho K1, each step solved by
// preconditioned conjugate gradients. The line search enforces strict
// decrease of sup|F|.
SolveReport prescribed_curvature_solve(const TorusDivisor& d, const ScalarField& K,
                                       const TorusGrid& grid, double delta,
                                       const ScalarField* initial_guess = nullptr);

// Deterministic smooth pseudo-random field for seeded uniqueness probes:
// a fixed low-frequency trigonometric mix with seed-driven coefficients.
ScalarField seeded_initial_guess(const TorusGrid& grid, std::uint64_t seed);

// Smooth nonpositive annulus bump centered at a divisor point, calibrated so
// the lattice integral of K dA0 (weight rho) equals target_integral. The
// standard case-(c) test curvature.
ScalarField annulus_bump_curvature(const BackgroundMetric& bg, std::size_t point_index,
                                   double inner, double outer, double width,
                                   double target_integral);

} // namespace conemetric
