#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "conemetric/divisor.hpp"

using namespace conemetric;

namespace {

Divisor sphere_divisor(std::initializer_list<double> betas) {
    std::vector<DivisorEntry> e;
    int i = 0;
    for (double b : betas) e.push_back({"p" + std::to_string(i++), b});
    return Divisor(SurfaceSpec(0), std::move(e));
}

Divisor torus_divisor(std::initializer_list<double> betas) {
    std::vector<DivisorEntry> e;
    int i = 0;
    for (double b : betas) e.push_back({"p" + std::to_string(i++), b});
    return Divisor(SurfaceSpec(1), std::move(e));
}

} // namespace

TEST(Divisor, RejectsDuplicateLabels) {
    EXPECT_THROW(Divisor(SurfaceSpec(0), {{"p", 0.5}, {"p", -0.5}}), validation_error);
}

TEST(Divisor, RejectsNonfiniteOrders) {
    EXPECT_THROW(Divisor(SurfaceSpec(0), {{"p", std::nan("")}}), validation_error);
}

TEST(Divisor, EulerChar) {
    EXPECT_DOUBLE_EQ(euler_char(sphere_divisor({})), 2.0);
    EXPECT_DOUBLE_EQ(euler_char(sphere_divisor({-0.5, -0.5, -0.5})), 0.5);
    EXPECT_DOUBLE_EQ(euler_char(torus_divisor({0.5, -0.5})), 0.0);
    Divisor genus2(SurfaceSpec(2), {{"p", 1.0}});
    EXPECT_DOUBLE_EQ(euler_char(genus2), -1.0);
}

TEST(Classify, Trichotomy) {
    auto cone = classify_order(0.5);
    EXPECT_EQ(cone.kind, SingularityKind::conical);
    EXPECT_DOUBLE_EQ(cone.angle, two_pi * 1.5);

    EXPECT_EQ(classify_order(-2.0).kind, SingularityKind::infinite_end);

    EXPECT_EQ(classify_order(-1.0, true).kind, SingularityKind::cusp);
    EXPECT_EQ(classify_order(-1.0, false).kind, SingularityKind::infinite_end);
    EXPECT_THROW(classify_order(-1.0), indeterminate_error);
}

TEST(Classify, HintIgnoredAwayFromMinusOne) {
    EXPECT_EQ(classify_order(0.25, false).kind, SingularityKind::conical);
}

TEST(Classify, AngleOrderBijection) {
    for (double beta : {-0.99, -0.5, 0.0, 1.0, 7.5}) {
        double theta = order_to_angle(beta);
        EXPECT_GT(theta, 0.0);
        EXPECT_NEAR(angle_to_order(theta), beta, 1e-15);
    }
    EXPECT_THROW(order_to_angle(-1.0), domain_error);
    EXPECT_THROW(angle_to_order(0.0), domain_error);
}

TEST(FlatRepresentable, ExactZeroTest) {
    EXPECT_TRUE(check_flat_representable(torus_divisor({0.5, -0.5})));
    EXPECT_TRUE(check_flat_representable(sphere_divisor({-2.0})));
    EXPECT_TRUE(check_flat_representable(Divisor(SurfaceSpec(2), {{"p", 2.0}})));
    // equality is sharp: no tolerance window
    EXPECT_FALSE(check_flat_representable(torus_divisor({0.5, -0.5 + 1e-15})));
    EXPECT_FALSE(check_flat_representable(sphere_divisor({})));
}

TEST(LuoTian, SymmetricHalfAngles) {
    auto r = check_luo_tian(sphere_divisor({-0.5, -0.5, -0.5}));
    EXPECT_EQ(r.verdict, LuoTianVerdict::representable_uniquely);
    EXPECT_DOUBLE_EQ(r.lhs, 0.5);
    EXPECT_DOUBLE_EQ(r.rhs, 1.0);
    EXPECT_EQ(r.n, 3u);
}

TEST(LuoTian, NotRepresentable) {
    auto r = check_luo_tian(sphere_divisor({-0.1, -0.1, -0.8}));
    EXPECT_EQ(r.verdict, LuoTianVerdict::not_representable);
    EXPECT_GE(r.lhs, r.rhs);
}

TEST(LuoTian, ScopeGuards) {
    EXPECT_EQ(check_luo_tian(sphere_divisor({-0.5, -0.5})).verdict,
              LuoTianVerdict::out_of_theorem_scope);
    EXPECT_EQ(check_luo_tian(sphere_divisor({-0.5, -0.5, 0.5})).verdict,
              LuoTianVerdict::out_of_theorem_scope);
    EXPECT_EQ(check_luo_tian(torus_divisor({-0.5, -0.5, -0.5})).verdict,
              LuoTianVerdict::out_of_theorem_scope);
}

TEST(LuoTian, SmoothPointsAreDropped) {
    auto with_zero = check_luo_tian(sphere_divisor({-0.5, -0.5, -0.5, 0.0}));
    EXPECT_EQ(with_zero.verdict, LuoTianVerdict::representable_uniquely);
    EXPECT_EQ(with_zero.n, 3u);
}

// the order form and the angle form of the double inequality must agree;
// they are evaluated independently
TEST(LuoTian, AngleFormMatchesOrderForm) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> beta(-0.999, -0.001);
    std::uniform_int_distribution<int> count(3, 5);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<DivisorEntry> e;
        int n = count(rng);
        for (int i = 0; i < n; ++i) e.push_back({"p" + std::to_string(i), beta(rng)});
        auto r = check_luo_tian(Divisor(SurfaceSpec(0), std::move(e)));
        ASSERT_NE(r.verdict, LuoTianVerdict::out_of_theorem_scope);
        bool order_form = 0.0 < r.lhs && r.lhs < r.rhs;
        bool angle_form = r.angle_lower < r.sum_theta && r.sum_theta < r.angle_upper;
        EXPECT_EQ(order_form, angle_form) << "trial " << trial;
        EXPECT_EQ(order_form, r.verdict == LuoTianVerdict::representable_uniquely);
    }
}

TEST(LuoTian, InvariantUnderEntryPermutation) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> beta(-0.999, -0.001);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> betas = {beta(rng), beta(rng), beta(rng), beta(rng)};
        std::vector<DivisorEntry> e;
        for (std::size_t i = 0; i < betas.size(); ++i)
            e.push_back({"p" + std::to_string(i), betas[i]});
        auto base = check_luo_tian(Divisor(SurfaceSpec(0), e));
        std::shuffle(betas.begin(), betas.end(), rng);
        std::vector<DivisorEntry> shuffled;
        for (std::size_t i = 0; i < betas.size(); ++i)
            shuffled.push_back({"p" + std::to_string(i), betas[i]});
        auto perm = check_luo_tian(Divisor(SurfaceSpec(0), std::move(shuffled)));
        EXPECT_EQ(base.verdict, perm.verdict) << "trial " << trial;
        EXPECT_DOUBLE_EQ(base.rhs, perm.rhs);
        EXPECT_DOUBLE_EQ(base.angle_lower, perm.angle_lower);
    }
}

TEST(CurvatureSummary, RejectsContradictions) {
    CurvatureSummary k;
    k.identically_zero = true;
    k.not_identically_zero = true;
    EXPECT_THROW(k.validate(), validation_error);

    CurvatureSummary k2;
    k2.identically_zero = true;
    k2.sup_positive = true;
    EXPECT_THROW(k2.validate(), validation_error);

    CurvatureSummary k3;
    k3.nonpositive = true;
    k3.sup_positive = true;
    EXPECT_THROW(k3.validate(), validation_error);

    CurvatureSummary k4;
    k4.integrability_exponent = 1.0; // needs p > 1
    EXPECT_THROW(k4.validate(), validation_error);
}

TEST(PrescribedCase, SelectionBySignOfChi) {
    CurvatureSummary neg;
    neg.nonpositive = true;
    neg.not_identically_zero = true;

    auto c = check_prescribed_case(torus_divisor({-0.5}), neg);
    EXPECT_EQ(c.which, PrescribedCase::c);
    EXPECT_TRUE(c.hypotheses_met);
    EXPECT_TRUE(c.unique);
    EXPECT_LT(c.chi, 0.0);

    auto b = check_prescribed_case(torus_divisor({0.5, -0.5}), neg);
    EXPECT_EQ(b.which, PrescribedCase::b);
    EXPECT_FALSE(b.hypotheses_met); // chi = 0 wants K = 0 or sign-changing K

    CurvatureSummary zero;
    zero.identically_zero = true;
    auto b2 = check_prescribed_case(torus_divisor({0.5, -0.5}), zero);
    EXPECT_TRUE(b2.hypotheses_met);

    CurvatureSummary mixed;
    mixed.sup_positive = true;
    mixed.not_identically_zero = true;
    mixed.integral_sign_vs_flat = CurvatureSummary::IntegralSign::negative;
    auto b3 = check_prescribed_case(torus_divisor({0.5, -0.5}), mixed);
    EXPECT_TRUE(b3.hypotheses_met);
}

TEST(PrescribedCase, CaseAExponentBound) {
    CurvatureSummary pos;
    pos.sup_positive = true;
    pos.not_identically_zero = true;
    pos.integrability_exponent = 2.0; // q = 2

    auto ok = check_prescribed_case(sphere_divisor({-0.5, -0.5, -0.5}), pos); // chi = 1/2
    EXPECT_EQ(ok.which, PrescribedCase::a);
    EXPECT_DOUBLE_EQ(ok.q, 2.0);
    EXPECT_DOUBLE_EQ(ok.q_chi, 1.0);
    EXPECT_TRUE(ok.hypotheses_met);

    auto tight = check_prescribed_case(sphere_divisor({-0.5, -0.5}), pos); // chi = 1, q chi = 2
    EXPECT_FALSE(tight.hypotheses_met);

    CurvatureSummary flatK;
    flatK.nonpositive = true;
    flatK.not_identically_zero = true;
    auto wrong_sign = check_prescribed_case(sphere_divisor({-0.5, -0.5, -0.5}), flatK);
    EXPECT_FALSE(wrong_sign.hypotheses_met);
}

TEST(RiemannHurwitz, CyclicDoubleCover) {
    BranchData b(2, SurfaceSpec(0), {{"0", 1}, {"inf", 1}});
    auto r = riemann_hurwitz(b);
    EXPECT_EQ(r.chi_total, 2);
    EXPECT_TRUE(r.consistent_with(SurfaceSpec(0)));
}

TEST(RiemannHurwitz, GenusTwoFromSixPoints) {
    // hyperelliptic: degree 2, six simple branch points
    std::vector<std::pair<std::string, int>> orders;
    for (int i = 0; i < 6; ++i) orders.push_back({"b" + std::to_string(i), 1});
    auto r = riemann_hurwitz(BranchData(2, SurfaceSpec(0), orders));
    EXPECT_EQ(r.chi_total, -2);
    EXPECT_TRUE(r.consistent_with(SurfaceSpec(2)));
}

TEST(RiemannHurwitz, ImpossibleCovers) {
    // odd total chi cannot close up
    EXPECT_THROW(riemann_hurwitz(BranchData(2, SurfaceSpec(0), {{"p", 1}})),
                 impossible_cover_error);
    // chi above 2 belongs to no closed orientable surface
    EXPECT_THROW(riemann_hurwitz(BranchData(3, SurfaceSpec(0), {})), impossible_cover_error);
}

TEST(RiemannHurwitz, OrderBounds) {
    EXPECT_THROW(BranchData(2, SurfaceSpec(0), {{"p", 2}}), validation_error);
    EXPECT_THROW(BranchData(2, SurfaceSpec(0), {{"p", 0}}), validation_error);
}

TEST(Orbifold, StandardTriangleGroups) {
    auto d = orbifold_divisor({2, 3, 7}, SurfaceSpec(0));
    ASSERT_EQ(d.size(), 3u);
    EXPECT_DOUBLE_EQ(d.entries[0].beta, 0.5 - 1.0);
    EXPECT_DOUBLE_EQ(d.entries[1].beta, 1.0 / 3.0 - 1.0);
    EXPECT_DOUBLE_EQ(d.entries[2].beta, 1.0 / 7.0 - 1.0);
    EXPECT_LT(euler_char(d), 0.0); // (2,3,7) is hyperbolic
}

TEST(Orbifold, TrivialStabilizersDropped) {
    auto d = orbifold_divisor({1, 2, 1}, SurfaceSpec(0));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_DOUBLE_EQ(d.entries[0].beta, -0.5);
    EXPECT_THROW(orbifold_divisor({0}, SurfaceSpec(0)), domain_error);
}

// flat representability and case (b) with K == 0 describe the same divisors
TEST(PrescribedCase, FlatDivisorsLandInCaseB) {
    CurvatureSummary zero;
    zero.identically_zero = true;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> beta(-0.9, 1.5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<DivisorEntry> e = {{"p", beta(rng)}, {"q", beta(rng)}};
        int genus = trial % 3;
        e.push_back({"r", double(2 * genus - 2) - e[0].beta - e[1].beta});
        Divisor d(SurfaceSpec(genus), std::move(e));
        if (!check_flat_representable(d)) continue; // rounding may miss exact zero
        auto r = check_prescribed_case(d, zero);
        EXPECT_EQ(r.which, PrescribedCase::b);
        EXPECT_TRUE(r.hypotheses_met);
    }
}

// with every order <= -1 the decorated chi sits under chi(S) - n, with
// equality exactly at the all-cusps configuration
TEST(Divisor, EulerCharDominatedByPuncturedChi) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> beta(-3.0, -1.0);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 4, genus = trial % 2;
        std::vector<DivisorEntry> e;
        bool all_cusps = trial % 5 == 0;
        for (int i = 0; i < n; ++i)
            e.push_back({"p" + std::to_string(i), all_cusps ? -1.0 : beta(rng)});
        Divisor d(SurfaceSpec(genus), e);
        double chi_punctured = double(d.surface.euler() - n);
        EXPECT_LE(euler_char(d), chi_punctured);
        bool every_order_minus_one = true;
        for (const auto& en : e) every_order_minus_one &= (en.beta == -1.0);
        EXPECT_EQ(euler_char(d) == chi_punctured, every_order_minus_one);
    }
}

TEST(Tang, NecessaryCondition) {
    EXPECT_TRUE(check_tang_necessary(0.5, true).obstruction);
    EXPECT_TRUE(check_tang_necessary(0.0, true).obstruction);
    EXPECT_FALSE(check_tang_necessary(-0.5, true).obstruction);
    // the comparison hypothesis is off: nothing to say
    EXPECT_FALSE(check_tang_necessary(0.5, false).obstruction);
}
