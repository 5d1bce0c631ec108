#include <gtest/gtest.h>

#include <cmath>

#include "conemetric/background.hpp"

using namespace conemetric;

namespace {

TorusDivisor flat_pair() {
    return {{{"p", 0.5, 0.25, 0.25}, {"q", -0.5, 0.75, 0.75}}};
}

} // namespace

TEST(Smoothstep, EndpointContactOrder) {
    EXPECT_DOUBLE_EQ(smoothstep13(0.0), 0.0);
    EXPECT_DOUBLE_EQ(smoothstep13(1.0), 1.0);
    EXPECT_DOUBLE_EQ(smoothstep13(0.5), 0.5); // odd symmetry about the center
    EXPECT_DOUBLE_EQ(smoothstep13_d1(0.0), 0.0);
    EXPECT_DOUBLE_EQ(smoothstep13_d1(1.0), 0.0);
    EXPECT_DOUBLE_EQ(smoothstep13_d2(0.0), 0.0);
    EXPECT_DOUBLE_EQ(smoothstep13_d2(1.0), 0.0);
    // derivatives by central differences
    double h = 1e-6, t = 0.37;
    EXPECT_NEAR((smoothstep13(t + h) - smoothstep13(t - h)) / (2 * h),
                smoothstep13_d1(t), 1e-6);
    EXPECT_NEAR((smoothstep13_d1(t + h) - smoothstep13_d1(t - h)) / (2 * h),
                smoothstep13_d2(t), 1e-5);
    // monotone on [0, 1]
    for (int i = 0; i <= 100; ++i) EXPECT_GE(smoothstep13_d1(i / 100.0), 0.0);
}

TEST(Background, CompatibilityIntegralIsExact) {
    TorusGrid grid(128, {0.0, 1.0});
    auto bg = build_background(flat_pair(), 0.15, grid);
    double integral = integrate(bg.rhoK1, ScalarField(grid, 1.0));
    EXPECT_NEAR(integral, two_pi * 0.0, 1e-13);

    TorusDivisor single{{{"p", -0.5, 0.5, 0.5}}};
    auto bg2 = build_background(single, 0.15, grid);
    double integral2 = integrate(bg2.rhoK1, ScalarField(grid, 1.0));
    EXPECT_NEAR(integral2, two_pi * -0.5, 1e-13);
}

TEST(Background, RawDefectsAreSmallButNonzero) {
    TorusGrid grid(128, {0.0, 1.0});
    auto bg = build_background(flat_pair(), 0.15, grid);
    ASSERT_EQ(bg.raw_compat_defects.size(), 2u);
    for (double d : bg.raw_compat_defects) {
        EXPECT_NE(d, 0.0);
        EXPECT_LT(std::abs(d), 1e-2);
    }
}

TEST(Background, ExactConeFactorInsideHalfDisk) {
    TorusGrid grid(128, {0.0, 1.0});
    double delta = 0.15;
    auto bg = build_background(flat_pair(), delta, grid);
    // node at lattice offset (4, 0) from p: r = 4/128 inside delta/2
    int i = 32 + 4, j = 32;
    double r = 4.0 / 128.0;
    EXPECT_NEAR(bg.w0.at(i, j), 0.5 * std::log(r), 1e-12);
    EXPECT_NEAR(bg.rho.at(i, j), r, 1e-12); // rho = r^{2 beta} = r at beta = 1/2
    EXPECT_DOUBLE_EQ(bg.K1.at(i, j), 0.0);  // exactly conical there
    // far from both points the background is the flat metric
    EXPECT_DOUBLE_EQ(bg.w0.at(0, 64), 0.0);
    EXPECT_DOUBLE_EQ(bg.rho.at(0, 64), 1.0);
}

TEST(Background, SnapsPointsToNodes) {
    TorusGrid grid(128, {0.0, 1.0});
    TorusDivisor d{{{"p", 0.5, 0.2501, 0.2499}, {"q", -0.5, 0.75, 0.75}}};
    auto bg = build_background(d, 0.15, grid);
    EXPECT_DOUBLE_EQ(bg.divisor.points[0].a, 0.25);
    EXPECT_DOUBLE_EQ(bg.divisor.points[0].b, 0.25);
}

TEST(Background, RegionMask) {
    TorusGrid grid(128, {0.0, 1.0});
    auto bg = build_background(flat_pair(), 0.15, grid);
    auto near = bg.region_mask(1.0);
    auto far = bg.region_mask(2.0);
    // the far mask is contained in the near mask
    std::size_t n_near = 0, n_far = 0;
    for (std::size_t k = 0; k < near.size(); ++k) {
        n_near += near[k];
        n_far += far[k];
        if (far[k]) EXPECT_TRUE(near[k]);
    }
    EXPECT_GT(n_far, 0u);
    EXPECT_GT(n_near, n_far);
    // the node at p is masked out
    EXPECT_FALSE(near[std::size_t(32) * 128 + 32]);
}

TEST(Background, ConfigurationGuards) {
    TorusGrid grid(128, {0.0, 1.0});
    // delta under four node spacings
    EXPECT_THROW(build_background(flat_pair(), 0.02, grid), configuration_error);
    // points closer than 4 delta
    TorusDivisor close{{{"p", 0.5, 0.25, 0.25}, {"q", -0.5, 0.3, 0.25}}};
    EXPECT_THROW(build_background(close, 0.15, grid), configuration_error);
    // blending disk wraps around the torus
    EXPECT_THROW(build_background(TorusDivisor{{{"p", -0.5, 0.5, 0.5}}}, 0.51, grid),
                 configuration_error);
    EXPECT_THROW(build_background(flat_pair(), -0.1, grid), configuration_error);
}

TEST(Background, ObliqueLatticeCompatibility) {
    TorusGrid grid(128, {0.3, 1.2});
    TorusDivisor d{{{"p", -0.25, 0.5, 0.5}}};
    auto bg = build_background(d, 0.15, grid);
    double integral = integrate(bg.rhoK1, ScalarField(grid, 1.0));
    EXPECT_NEAR(integral, two_pi * -0.25, 1e-13);
}
