#pragma once

#include <complex>
#include <memory>
#include <variant>
#include <vector>

#include "conemetric/divisor.hpp"

namespace conemetric {

// Closed-form singular metrics on the sphere chart C u {inf}, written as
// g = e^{2w} |dz|^2 away from the singular set.

struct FlatCone {
    // g = |z|^{2 alpha} |dz|^2. alpha = -1 is the flat cylinder, the only
    // member whose 0-end is not conical.
    double alpha;
    explicit FlatCone(double a) : alpha(a) {
        if (!(a >= -1.0)) throw validation_error("flat cone requires order >= -1");
    }
};

struct MultiCone {
    // g = prod |z - p_i|^{2 beta_i} |dz|^2, flat, smooth at infinity.
    struct Cone {
        std::complex<double> p;
        double beta;
        std::string label;
    };
    std::vector<Cone> cones;
    explicit MultiCone(std::vector<Cone> c) : cones(std::move(c)) {
        double s = 0.0;
        for (const auto& cn : cones) s += cn.beta;
        if (s != -2.0)
            throw validation_error("multi-cone orders must sum to -2 (smoothness at infinity)");
    }
};

struct Football {
    // g = 4 (1+beta)^2 |z|^{2 beta} (1 + |z|^{2(1+beta)})^{-2} |dz|^2,
    // curvature +1, cone points of equal order at 0 and infinity.
    double beta;
    explicit Football(double b) : beta(b) {
        if (!(b > -1.0)) throw validation_error("football order must exceed -1");
    }
};

struct RoundSphere {};

struct ModelMetric;

struct Pullback {
    // Pull-back of the base metric under z -> z^k.
    std::shared_ptr<const ModelMetric> base;
    int k;
    Pullback(std::shared_ptr<const ModelMetric> b, int degree);
};

struct ModelMetric {
    std::variant<FlatCone, MultiCone, Football, RoundSphere, Pullback> v;

    template <typename T>
    ModelMetric(T m) : v(std::move(m)) {}
};

Divisor divisor_of(const ModelMetric& m);

// Gaussian curvature at a regular point; evaluation on the divisor support
// is a domain error.
double curvature_at(const ModelMetric& m, std::complex<double> z);

// log conformal factor w with g = e^{2w} |dz|^2, at a regular point of the
// finite chart. Feeds the finite-difference curvature oracle.
double log_conformal_factor(const ModelMetric& m, std::complex<double> z);

struct GaussBonnetResult {
    double total_curvature;
    double expected; // 2 pi chi(S, beta) of divisor_of
    double residual; // |total - expected|
};

// Total curvature in closed form: 0 for the flat family, area (= 2 theta)
// for footballs, degree-scaled for pullbacks.
GaussBonnetResult gauss_bonnet_total(const ModelMetric& m);

struct IsoperimetricSample {
    double r;
    double L;
    double A;
    double ratio; // L^2 / (4 pi A)
};

struct IsoperimetricProfile {
    std::vector<IsoperimetricSample> samples;
    double limit; // -(sum of probed-end orders + 1) per the isoperimetric theorem
    bool constant_in_r;
};

// Metric balls of a flat cone measured from the tip (or, for the cylinder,
// from the waist toward one end). from_infinity_side probes the 0-end
// instead, which must have order <= -1.
IsoperimetricProfile isoperimetric_profile(const FlatCone& cone,
                                           const std::vector<double>& radii,
                                           bool from_infinity_side = false);

// Length of the radial geodesic joining the two cone points of a football;
// equals pi for every order. Verified by adaptive quadrature after the
// substitution r = s^{1/(1+beta)}, which removes the algebraic endpoint
// singularity of the raw radial integrand.
double football_geodesic_distance(double beta, double abs_tol = 1e-12);

struct CohnVossenResult {
    double lhs;        // (1/2pi) total curvature of the punctured surface
    double rhs;        // chi of the punctured surface
    bool holds;        // lhs <= rhs
    bool values_equal; // lhs == rhs within closed-form arithmetic
    bool finite_area;  // whether the punctured surface has finite area
};

// Total-curvature inequality for the model punctured at the listed divisor
// labels. Punctured orders must be <= -1; the equality clause is only
// asserted in the finite-area direction.
CohnVossenResult cohn_vossen_check(const ModelMetric& m,
                                   const std::vector<std::string>& punctures);

} // namespace conemetric
