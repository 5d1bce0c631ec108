#include "conemetric/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace conemetric {

Divisor::Divisor(SurfaceSpec s, std::vector<DivisorEntry> e)
    : surface(s), entries(std::move(e)) {
    std::unordered_set<std::string> seen;
    for (const auto& en : entries) {
        if (!std::isfinite(en.beta))
            throw validation_error("divisor order must be finite: " + en.label);
        if (!seen.insert(en.label).second)
            throw validation_error("duplicate divisor point: " + en.label);
    }
}

double Divisor::sum_orders() const {
    double s = 0.0;
    for (const auto& en : entries) s += en.beta;
    return s;
}

double euler_char(const Divisor& d) {
    return double(d.surface.euler()) + d.sum_orders();
}

SingularityClass classify_order(double beta, std::optional<bool> finite_area_hint) {
    if (!std::isfinite(beta)) throw domain_error("order must be finite");
    if (beta > -1.0) return {SingularityKind::conical, two_pi * (beta + 1.0)};
    if (beta < -1.0) return {SingularityKind::infinite_end, 0.0};
    if (!finite_area_hint)
        throw indeterminate_error(
            "order -1 is a cusp or an infinite end depending on the metric; "
            "pass a finite-area hint");
    return *finite_area_hint ? SingularityClass{SingularityKind::cusp, 0.0}
                             : SingularityClass{SingularityKind::infinite_end, 0.0};
}

double angle_to_order(double theta) {
    if (!(theta > 0.0)) throw domain_error("cone angle must be positive");
    return theta / two_pi - 1.0;
}

double order_to_angle(double beta) {
    if (!(beta > -1.0)) throw domain_error("only orders > -1 are conical");
    return two_pi * (beta + 1.0);
}

bool check_flat_representable(const Divisor& d) {
    return euler_char(d) == 0.0;
}

LuoTianReport check_luo_tian(const Divisor& d) {
    std::vector<double> betas;
    for (const auto& en : d.entries)
        if (en.beta != 0.0) betas.push_back(en.beta);

    LuoTianReport r{};
    r.n = betas.size();
    bool in_scope = d.surface.is_sphere() && betas.size() >= 3;
    for (double b : betas)
        if (!(b > -1.0 && b < 0.0)) in_scope = false;

    double sum = 0.0, mn = in_scope ? betas[0] : 0.0;
    for (double b : betas) {
        sum += b;
        mn = std::min(mn, b);
    }
    r.lhs = 2.0 + sum;
    r.rhs = in_scope ? 2.0 * (1.0 + mn) : 0.0;
    if (!in_scope) {
        r.verdict = LuoTianVerdict::out_of_theorem_scope;
        return r;
    }
    r.sum_theta = two_pi * (sum + double(betas.size()));
    r.angle_lower = two_pi * (double(betas.size()) - 2.0);
    r.angle_upper = r.angle_lower + 2.0 * two_pi * (1.0 + mn);
    bool holds = (0.0 < r.lhs) && (r.lhs < r.rhs);
    r.verdict = holds ? LuoTianVerdict::representable_uniquely
                      : LuoTianVerdict::not_representable;
    return r;
}

void CurvatureSummary::validate() const {
    if (identically_zero && (sup_positive || not_identically_zero))
        throw validation_error("identically-zero curvature cannot be positive anywhere");
    if (nonpositive && sup_positive)
        throw validation_error("nonpositive curvature cannot have positive sup");
    if (!(integrability_exponent > 1.0))
        throw validation_error("integrability exponent must exceed 1");
}

PrescribedCaseReport check_prescribed_case(const Divisor& d, const CurvatureSummary& k) {
    k.validate();
    PrescribedCaseReport r{};
    r.chi = euler_char(d);
    double p = k.integrability_exponent;
    r.q = p / (p - 1.0);
    r.q_chi = r.q * r.chi;

    std::ostringstream det;
    if (r.chi > 0.0) {
        r.which = PrescribedCase::a;
        r.hypotheses_met = k.sup_positive && (r.q_chi < 2.0);
        det << "chi = " << r.chi << " > 0: needs sup K > 0 and q chi < 2 (q chi = "
            << r.q_chi << ")";
    } else if (r.chi == 0.0) {
        r.which = PrescribedCase::b;
        bool flat_route = k.identically_zero;
        bool sign_route = k.sup_positive &&
            k.integral_sign_vs_flat == CurvatureSummary::IntegralSign::negative;
        r.hypotheses_met = flat_route || sign_route;
        det << "chi = 0: needs K == 0, or sup K > 0 with negative flat-metric integral";
    } else {
        r.which = PrescribedCase::c;
        r.hypotheses_met = k.nonpositive && k.not_identically_zero;
        r.unique = r.hypotheses_met;
        det << "chi = " << r.chi << " < 0: needs K <= 0 and K not identically 0";
    }
    r.details = det.str();
    return r;
}

BranchData::BranchData(int d, SurfaceSpec b, std::vector<std::pair<std::string, int>> orders)
    : degree(d), base(b), branch_orders(std::move(orders)) {
    if (degree < 1) throw validation_error("cover degree must be positive");
    for (const auto& [label, op] : branch_orders) {
        if (op < 1)
            throw validation_error("ramification order must be >= 1 at " + label);
        if (op > degree - 1)
            throw validation_error("ramification order exceeds degree - 1 at " + label);
    }
}

int BranchData::sum_orders() const {
    int s = 0;
    for (const auto& [label, op] : branch_orders) s += op;
    return s;
}

RiemannHurwitzResult riemann_hurwitz(const BranchData& b) {
    int chi = b.degree * b.base.euler() - b.sum_orders();
    if (chi > 2 || (chi % 2) != 0) {
        std::ostringstream msg;
        msg << "no closed orientable surface has euler characteristic " << chi;
        throw impossible_cover_error(msg.str());
    }
    return {chi};
}

Divisor orbifold_divisor(const std::vector<int>& stabilizer_orders, SurfaceSpec surface) {
    std::vector<DivisorEntry> entries;
    int idx = 0;
    for (int n : stabilizer_orders) {
        if (n <= 0) throw domain_error("stabilizer order must be positive");
        if (n == 1) continue; // free point, no singularity
        entries.push_back({"orb" + std::to_string(idx++), 1.0 / double(n) - 1.0});
    }
    return Divisor(surface, std::move(entries));
}

TangVerdict check_tang_necessary(double integral_K_dA0, bool beta_leq_alpha) {
    if (beta_leq_alpha && integral_K_dA0 >= 0.0)
        return {true, "necessary condition violated: flat-metric integral of K is nonnegative"};
    return {false, "no obstruction detected"};
}

} // namespace conemetric
