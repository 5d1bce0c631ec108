#include "conemetric/model_metrics.hpp"

#include <cmath>
#include <sstream>

#include "conemetric/quadrature.hpp"

namespace conemetric {

Pullback::Pullback(std::shared_ptr<const ModelMetric> b, int degree)
    : base(std::move(b)), k(degree) {
    if (!base) throw validation_error("pullback needs a base metric");
    if (k < 1) throw validation_error("pullback degree must be positive");
}

namespace {

// Divisor entry with its chart position; infinity is tracked separately
// because the pullback branch locus is exactly {0, inf}.
struct SupportPoint {
    bool at_infinity = false;
    std::complex<double> z{0.0, 0.0};
    double beta = 0.0;
    std::string label;
};

std::vector<SupportPoint> support_of(const ModelMetric& m);

struct SupportVisitor {
    std::vector<SupportPoint> operator()(const FlatCone& c) const {
        return {{false, {0.0, 0.0}, c.alpha, "0"},
                {true, {0.0, 0.0}, -2.0 - c.alpha, "inf"}};
    }
    std::vector<SupportPoint> operator()(const MultiCone& c) const {
        std::vector<SupportPoint> out;
        int idx = 0;
        for (const auto& cn : c.cones) {
            std::string label = cn.label.empty() ? "p" + std::to_string(idx) : cn.label;
            out.push_back({false, cn.p, cn.beta, label});
            ++idx;
        }
        return out;
    }
    std::vector<SupportPoint> operator()(const Football& f) const {
        return {{false, {0.0, 0.0}, f.beta, "0"}, {true, {0.0, 0.0}, f.beta, "inf"}};
    }
    std::vector<SupportPoint> operator()(const RoundSphere&) const { return {}; }
    std::vector<SupportPoint> operator()(const Pullback& p) const {
        auto base = support_of(*p.base);
        double beta0 = 0.0, beta_inf = 0.0;
        std::vector<SupportPoint> out;
        for (const auto& sp : base) {
            if (sp.at_infinity) {
                beta_inf = sp.beta;
            } else if (std::abs(sp.z) == 0.0) {
                beta0 = sp.beta;
            } else {
                // k unbranched preimages, the k-th roots of the base point
                double r = std::pow(std::abs(sp.z), 1.0 / double(p.k));
                double phi = std::arg(sp.z) / double(p.k);
                for (int j = 0; j < p.k; ++j) {
                    double a = phi + two_pi * double(j) / double(p.k);
                    std::string label =
                        p.k == 1 ? sp.label : sp.label + "#" + std::to_string(j);
                    out.push_back({false, std::polar(r, a), sp.beta, label});
                }
            }
        }
        // branch rule: order beta downstairs lifts to k(beta + 1) - 1
        out.push_back({false, {0.0, 0.0}, double(p.k) * (beta0 + 1.0) - 1.0, "0"});
        out.push_back({true, {0.0, 0.0}, double(p.k) * (beta_inf + 1.0) - 1.0, "inf"});
        return out;
    }
};

std::vector<SupportPoint> support_of(const ModelMetric& m) {
    return std::visit(SupportVisitor{}, m.v);
}

} // namespace

Divisor divisor_of(const ModelMetric& m) {
    std::vector<DivisorEntry> entries;
    for (const auto& sp : support_of(m))
        if (sp.beta != 0.0) entries.push_back({sp.label, sp.beta});
    return Divisor(SurfaceSpec(0), std::move(entries));
}

namespace {

void require_regular(const ModelMetric& m, std::complex<double> z) {
    for (const auto& sp : support_of(m)) {
        if (sp.beta == 0.0 || sp.at_infinity) continue;
        if (std::abs(z - sp.z) == 0.0)
            throw domain_error("evaluation at the singular point " + sp.label);
    }
}

} // namespace

double curvature_at(const ModelMetric& m, std::complex<double> z) {
    require_regular(m, z);
    if (std::holds_alternative<FlatCone>(m.v) || std::holds_alternative<MultiCone>(m.v))
        return 0.0;
    if (std::holds_alternative<Football>(m.v) || std::holds_alternative<RoundSphere>(m.v))
        return 1.0;
    const auto& p = std::get<Pullback>(m.v);
    return curvature_at(*p.base, std::pow(z, p.k));
}

double log_conformal_factor(const ModelMetric& m, std::complex<double> z) {
    require_regular(m, z);
    if (const auto* c = std::get_if<FlatCone>(&m.v))
        return c->alpha * std::log(std::abs(z));
    if (const auto* c = std::get_if<MultiCone>(&m.v)) {
        double w = 0.0;
        for (const auto& cn : c->cones) w += cn.beta * std::log(std::abs(z - cn.p));
        return w;
    }
    if (const auto* f = std::get_if<Football>(&m.v)) {
        double b = f->beta;
        double r = std::abs(z);
        return std::log(2.0 * (1.0 + b)) + b * std::log(r) -
               std::log1p(std::pow(r, 2.0 * (1.0 + b)));
    }
    if (std::holds_alternative<RoundSphere>(m.v))
        return std::log(2.0) - std::log1p(std::norm(z));
    const auto& p = std::get<Pullback>(m.v);
    return log_conformal_factor(*p.base, std::pow(z, p.k)) + std::log(double(p.k)) +
           double(p.k - 1) * std::log(std::abs(z));
}

GaussBonnetResult gauss_bonnet_total(const ModelMetric& m) {
    double total;
    if (const auto* f = std::get_if<Football>(&m.v)) {
        total = 2.0 * two_pi * (1.0 + f->beta); // area 2 theta, curvature 1
    } else if (std::holds_alternative<RoundSphere>(m.v)) {
        total = 2.0 * two_pi;
    } else if (const auto* p = std::get_if<Pullback>(&m.v)) {
        total = double(p->k) * gauss_bonnet_total(*p->base).total_curvature;
    } else {
        total = 0.0;
    }
    double expected = two_pi * euler_char(divisor_of(m));
    return {total, expected, std::abs(total - expected)};
}

IsoperimetricProfile isoperimetric_profile(const FlatCone& cone,
                                           const std::vector<double>& radii,
                                           bool from_infinity_side) {
    double alpha = cone.alpha;
    bool cylinder = (alpha == -1.0);
    if (from_infinity_side && !cylinder)
        throw hypothesis_error(
            "probing the 0-end needs order <= -1; this cone's tip is conical");

    IsoperimetricProfile out;
    out.constant_in_r = !cylinder;
    out.limit = cylinder ? 0.0 : 1.0 + alpha;
    for (double r : radii) {
        if (!(r > 0.0)) throw domain_error("ball radius must be positive");
        IsoperimetricSample s;
        s.r = r;
        if (cylinder) {
            // |z|^{-2}|dz|^2 is the flat unit cylinder; balls grown from the
            // waist toward one end have constant circumference.
            s.L = two_pi;
            s.A = two_pi * r;
        } else {
            double theta = two_pi * (1.0 + alpha);
            s.L = theta * r;
            s.A = 0.5 * theta * r * r;
        }
        s.ratio = s.L * s.L / (2.0 * two_pi * s.A);
        out.samples.push_back(s);
    }
    return out;
}

double football_geodesic_distance(double beta, double abs_tol) {
    if (!(beta > -1.0)) throw domain_error("football order must exceed -1");
    // Raw radial length element: 2(1+beta) r^beta / (1 + r^{2(1+beta)}) dr on
    // (0, inf), symmetric under r -> 1/r, so integrate twice over (0, 1].
    // Substituting r = t^m with integer m >= 4/(1+beta) makes the integrand
    // vanish to third order at t = 0, which adaptive Simpson needs.
    int m = std::max(1, int(std::ceil(4.0 / (1.0 + beta))));
    double g = double(m) * (1.0 + beta);
    auto integrand = [&](double t) {
        if (t == 0.0) return 0.0;
        return 2.0 * 2.0 * g * std::pow(t, g - 1.0) / (1.0 + std::pow(t, 2.0 * g));
    };
    return adaptive_simpson(integrand, 0.0, 1.0, abs_tol);
}

CohnVossenResult cohn_vossen_check(const ModelMetric& m,
                                   const std::vector<std::string>& punctures) {
    if (punctures.empty())
        throw validation_error("puncture set is empty: nothing to check");
    Divisor d = divisor_of(m);
    for (const auto& label : punctures) {
        const DivisorEntry* found = nullptr;
        for (const auto& en : d.entries)
            if (en.label == label) found = &en;
        if (!found)
            throw domain_error("puncture label not in the divisor support: " + label);
        if (!(found->beta <= -1.0))
            throw hypothesis_error("punctured order must be <= -1 at " + label);
    }
    CohnVossenResult r;
    // Removing points does not change the curvature integral.
    r.lhs = gauss_bonnet_total(m).total_curvature / two_pi;
    r.rhs = 2.0 - double(punctures.size());
    r.holds = r.lhs <= r.rhs + 1e-15;
    r.values_equal = std::abs(r.lhs - r.rhs) < 1e-12;
    // Every puncturable end here is a power-law end of order <= -1, whose
    // neighborhoods all have divergent area integrals.
    r.finite_area = false;
    return r;
}

} // namespace conemetric
