#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conemetric/errors.hpp"

namespace conemetric {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Closed orientable surface given by genus.
struct SurfaceSpec {
    int genus = 0;

    SurfaceSpec() = default;
    explicit SurfaceSpec(int g) : genus(g) {
        if (g < 0) throw validation_error("genus must be nonnegative");
    }
    int euler() const { return 2 - 2 * genus; }
    bool is_sphere() const { return genus == 0; }
};

struct DivisorEntry {
    std::string label;
    double beta = 0.0;
};

// Formal sum of real-weighted points on a surface. Labels are pairwise
// distinct; orders may be any finite real.
struct Divisor {
    SurfaceSpec surface;
    std::vector<DivisorEntry> entries;

    Divisor() = default;
    Divisor(SurfaceSpec s, std::vector<DivisorEntry> e);

    double sum_orders() const;
    std::size_t size() const { return entries.size(); }
};

// chi(S, beta) = 2 - 2g + sum(beta_i).
double euler_char(const Divisor& d);

enum class SingularityKind { conical, cusp, infinite_end };

struct SingularityClass {
    SingularityKind kind;
    double angle = 0.0; // set only for conical: theta = 2*pi*(beta + 1)
};

// Trichotomy in the order beta. beta = -1 needs the finite-area hint:
// both a cusp and an infinite end occur at that order.
SingularityClass classify_order(double beta,
                                std::optional<bool> finite_area_hint = std::nullopt);

// Mutually inverse bijections between orders (-1, inf) and angles (0, inf).
double angle_to_order(double theta);
double order_to_angle(double beta);

// True iff chi(S, beta) == 0 exactly. Callers quantize inputs; equality
// here is sharp by design.
bool check_flat_representable(const Divisor& d);

enum class LuoTianVerdict { representable_uniquely, not_representable, out_of_theorem_scope };

struct LuoTianReport {
    LuoTianVerdict verdict;
    // Order form: 0 < 2 + sum(beta) < 2 (1 + min(beta)), strict.
    double lhs = 0.0;  // 2 + sum(beta)
    double rhs = 0.0;  // 2 (1 + min(beta))
    // Equivalent angle form: 2 pi (n - 2) < sum(theta) < 2 pi (n - 2) + 2 min(theta).
    double sum_theta = 0.0;
    double angle_lower = 0.0;
    double angle_upper = 0.0;
    std::size_t n = 0; // entries counted after dropping beta = 0
};

// Sphere-only double inequality deciding unique representability by a
// curvature +1 metric with n >= 3 cone points of orders in (-1, 0).
// Entries with beta = 0 are smooth points and are dropped first.
LuoTianReport check_luo_tian(const Divisor& d);

// Declarative sign/integrability summary of a curvature candidate K.
struct CurvatureSummary {
    bool sup_positive = false;
    bool nonpositive = false;
    bool not_identically_zero = false;
    bool identically_zero = false;
    double integrability_exponent = 2.0; // p > 1
    enum class IntegralSign { negative, zero, positive, unknown };
    IntegralSign integral_sign_vs_flat = IntegralSign::unknown;

    void validate() const;
};

enum class PrescribedCase { a, b, c, none };

struct PrescribedCaseReport {
    PrescribedCase which = PrescribedCase::none;
    bool hypotheses_met = false;
    bool unique = false; // set only in case c when hypotheses hold
    double chi = 0.0;
    double q = 0.0;       // conjugate exponent p/(p-1)
    double q_chi = 0.0;   // the case-a bound compares this against 2
    std::string details;
};

// Selects the existence case for prescribing curvature K on (S, beta) by
// the sign of chi(S, beta) and checks that case's hypotheses:
//   chi > 0 (a): sup K > 0 and q chi < 2;
//   chi = 0 (b): K == 0, or sup K > 0 with int K dA0 < 0;
//   chi < 0 (c): K <= 0 and K not identically 0 (solution then unique).
PrescribedCaseReport check_prescribed_case(const Divisor& d, const CurvatureSummary& k);

// Branched-cover combinatorics: degree, base surface, ramification orders
// O_p = local degree - 1 at each branch point.
struct BranchData {
    int degree = 1;
    SurfaceSpec base;
    std::vector<std::pair<std::string, int>> branch_orders;

    BranchData() = default;
    BranchData(int d, SurfaceSpec b, std::vector<std::pair<std::string, int>> orders);
    int sum_orders() const;
};

struct RiemannHurwitzResult {
    int chi_total; // d chi(base) - sum O_p
    bool consistent_with(const SurfaceSpec& s) const { return s.euler() == chi_total; }
};

// chi(S) + sum O_p = d chi(S1) solved for chi(S). A value that is odd or
// exceeds 2 belongs to no closed orientable surface.
RiemannHurwitzResult riemann_hurwitz(const BranchData& b);

// Quotient divisor of a group action with cyclic stabilizers of the given
// orders: beta_i = 1/n_i - 1. Order-1 stabilizers are smooth and dropped.
Divisor orbifold_divisor(const std::vector<int>& stabilizer_orders, SurfaceSpec surface);

struct TangVerdict {
    bool obstruction = false;
    std::string message;
};

// Necessary condition for prescribed curvature with orders beta <= alpha:
// int K dA0 < 0. Engaged only when beta_leq_alpha holds.
TangVerdict check_tang_necessary(double integral_K_dA0, bool beta_leq_alpha);

} // namespace conemetric
