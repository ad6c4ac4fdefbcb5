#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "steklov/errors.hpp"
#include "steklov/theorem_lab.hpp"

using namespace steklov;

TEST(Statement, NamesRoundTrip) {
    for (auto s : {Statement::upper_bound, Statement::supremum, Statement::collapse, Statement::stability,
                   Statement::revolution_bound, Statement::revolution_gap})
        EXPECT_EQ(parse_statement(to_string(s)), s);
    EXPECT_THROW(parse_statement("lemma"), ConfigurationError);
}

TEST(MakeCheck, Strictness) {
    LabOptions o;
    EXPECT_TRUE(make_check("q", 0.5, 1.0, 1e-3, true, o).pass);
    EXPECT_FALSE(make_check("q", 1.0 - 1e-9, 1.0, 0.0, true, o).pass);
    EXPECT_FALSE(make_check("q", 0.99, 1.0, 0.002, true, o).pass);
    EXPECT_TRUE(make_check("q", 1.0 + 1e-9, 1.0, 0.0, false, o).pass);
    EXPECT_FALSE(make_check("q", 1.0 + 1e-7, 1.0, 0.0, false, o).pass);
    EXPECT_DOUBLE_EQ(make_check("q", 0.25, 1.0, 0.0, true, o).margin, 0.75);
}

TEST(UpperBound, PlateauPasses) {
    auto r = check_upper_bound(make_plateau_family(1.0, 0.1, 10.0), sphere_spectrum(3, Normalization::unit_radius), 1);
    EXPECT_TRUE(r.pass);
    ASSERT_FALSE(r.checks.empty());
    EXPECT_LT(r.checks[0].computed, 1.0);
}

TEST(UpperBound, CylinderMargin) {
    auto r = check_upper_bound(make_cylinder(2.0), custom_spectrum({{0.0, 1}, {1.0, 1}}), 1);
    ASSERT_TRUE(r.pass);
    EXPECT_NEAR(r.checks[0].computed, std::tanh(1.0), 1e-6);
    EXPECT_NEAR(r.checks[0].margin, 1.0 - std::tanh(1.0), 1e-6);
    EXPECT_NEAR(r.checks[0].margin, 0.2384, 1e-4);
}

TEST(UpperBound, RandomProfilesPass) {
    LabOptions o;
    o.mesh = 1024;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto r = check_upper_bound(random_admissible_profile(seed), sphere_spectrum(4, Normalization::unit_radius), 3, o);
        EXPECT_TRUE(r.pass) << seed;
    }
}

TEST(UpperBound, RejectsInvalidProfile) {
    auto bad = make_table_profile({0, 0.3, 0.6, 1}, {1, 2, 2, 3}, ProfileKind::condition_h);
    EXPECT_THROW(check_upper_bound(bad, sphere_spectrum(2, Normalization::unit_radius), 1), PreconditionError);
    EXPECT_THROW(check_upper_bound(make_capped_profile(1, 1), sphere_spectrum(2, Normalization::unit_radius), 1),
                 PreconditionError);
}

TEST(Supremum, SweepClimbsTowardBound) {
    std::vector<double> eps{0.1, 0.05, 0.025};
    auto r = supremum_sweep(1.0, sphere_spectrum(2, Normalization::unit_radius), 1, eps);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.series.size(), 1u);
    const auto& pts = r.series[0].points;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        EXPECT_GT(pts[i].value, pts[i - 1].value);
        EXPECT_LT(*pts[i].sup_deviation, *pts[i - 1].sup_deviation);
    }
    EXPECT_TRUE(r.series[0].fitted_exponent.has_value());
}

TEST(Supremum, RejectsBadEpsilonLists) {
    auto cs = sphere_spectrum(2, Normalization::unit_radius);
    std::vector<double> increasing{0.05, 0.1};
    std::vector<double> too_big{0.3};
    EXPECT_THROW(supremum_sweep(1.0, cs, 1, increasing), DomainError);
    EXPECT_THROW(supremum_sweep(1.0, cs, 1, too_big), DomainError);
    std::vector<double> ok{0.1};
    EXPECT_THROW(supremum_sweep(1.0, sphere_spectrum(1, Normalization::unit_radius), 1, ok), DomainError);
}

TEST(Collapse, BoundsAndMonotone) {
    std::vector<double> eps{0.1, 0.05, 0.01};
    auto r = collapse_sweep(1.0, 2.0, eps);
    EXPECT_TRUE(r.pass);
    const auto& pts = r.series[0].points;
    EXPECT_NEAR(pts[0].bound, 0.601, 1e-12);
    EXPECT_NEAR(pts[2].bound, 0.060001, 1e-12);
    for (const auto& p : pts) EXPECT_LE(p.value, p.bound + 1e-8);
}

TEST(Stability, GammaFormula) {
    auto g = stability_gamma(2.0, 0.5, 1.0);
    EXPECT_NEAR(g.gamma, 0.015, 1e-15);
    EXPECT_FALSE(g.width_branch);
    EXPECT_NEAR(g.delta, 3.0 * 2.0 * 0.5 / 12.5, 1e-15);
}

TEST(Stability, GammaVanishesForLargeCeiling) {
    double previous = 1.0;
    for (double c : {1.0, 10.0, 100.0, 1000.0}) {
        double g = stability_gamma(2.0, 0.5, c).gamma;
        EXPECT_LT(g, previous);
        previous = g;
    }
    EXPECT_LT(previous, 1e-6);
}

TEST(Stability, WidthBranchForSmallCeiling) {
    const double lambda = 2.0, width = 0.5;
    const double threshold = std::sqrt(lambda) * width / (2.0 * std::sqrt(6.0));
    auto g = stability_gamma(lambda, width, 0.9 * threshold);
    EXPECT_TRUE(g.width_branch);
    EXPECT_DOUBLE_EQ(g.gamma, lambda * width / 4.0);
    EXPECT_FALSE(stability_gamma(lambda, width, 1.1 * threshold).width_branch);
}

TEST(Stability, CheckPassesOnCylinder) {
    auto r = stability_check(0.25, 0.75, 1.0, 2.0, make_cylinder(1.0));
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.checks.size(), 2u);
    EXPECT_NEAR(r.checks[0].bound, 0.985, 1e-12);
}

TEST(Stability, CheckPassesOnWidthBranch) {
    auto r = stability_check(0.25, 0.75, 0.1, 2.0, make_plateau_family(1.0, 0.1, 0.1));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.checks[0].bound, 0.75, 1e-12);
}

TEST(Stability, HypothesisViolationRaises) {
    EXPECT_THROW(stability_check(0.25, 0.75, 1.0, 2.0, make_plateau_family(1.0, 0.1, 2.0)), PreconditionError);
    EXPECT_THROW(stability_check(0.75, 0.25, 1.0, 2.0, make_cylinder(1.0)), PreconditionError);
}

TEST(Revolution, BoundOnCappedAndPlateau) {
    EXPECT_TRUE(revolution_bound_check(make_capped_profile(1.0, 1.0), 3).pass);
    auto r = revolution_bound_check(make_revolution_plateau(1.0, 0.05, 1.0), 1);
    EXPECT_TRUE(r.pass);
    EXPECT_GT(r.checks[0].computed, 1.7);
}

TEST(Revolution, BoundScalesWithH0) {
    auto r = revolution_bound_check(make_capped_profile(1.0, 2.0), 1);
    EXPECT_DOUBLE_EQ(r.checks[0].bound, 0.5);
    EXPECT_TRUE(r.pass);
}

TEST(Revolution, GapBounds) {
    auto r = revolution_gap_check(make_capped_profile(1.0, 1.0), 2);
    ASSERT_EQ(r.checks.size(), 2u);
    EXPECT_DOUBLE_EQ(r.checks[0].bound, 2.0);
    EXPECT_DOUBLE_EQ(r.checks[1].bound, 4.0);
    EXPECT_TRUE(r.pass);
}

TEST(Revolution, RejectsTwoBoundaryProfile) {
    EXPECT_THROW(revolution_bound_check(make_cylinder(1.0), 1), PreconditionError);
    EXPECT_THROW(revolution_gap_check(make_cylinder(1.0), 1), PreconditionError);
}

TEST(Revolution, SweepGapIncreases) {
    std::vector<double> eps{0.1, 0.05, 0.025};
    auto r = revolution_sweep(1.0, 1.0, 2, eps);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.series.size(), 4u);
    EXPECT_EQ(r.series[2].quantity.rfind("gap", 0), 0u);
}

TEST(Frobenius, BallExponents) {
    auto p = make_capped_profile(1.0, 1.0);
    for (int j = 1; j <= 3; ++j) {
        const double lambda = j * (j + 1.0);
        auto grid = make_grid(p, 4096);
        auto sol = solve_mode(make_mode_problem(p, lambda, grid));
        auto fit = fit_frobenius_exponent(sol, grid, lambda);
        EXPECT_DOUBLE_EQ(fit.expected, j);
        EXPECT_NEAR(fit.exponent / j, 1.0, 0.1);
        EXPECT_GE(fit.points, 2u);
    }
}

TEST(PowerLaw, RecoversExponent) {
    std::vector<double> x{0.1, 0.05, 0.025}, y;
    for (double v : x) y.push_back(3.0 * std::sqrt(v));
    EXPECT_NEAR(fit_power_law_exponent(x, y), 0.5, 1e-12);
    std::vector<double> bad{1.0};
    EXPECT_THROW(fit_power_law_exponent(bad, bad), DomainError);
}
