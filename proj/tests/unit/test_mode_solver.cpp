#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "steklov/errors.hpp"
#include "steklov/mode_solver.hpp"
#include "steklov/theorem_lab.hpp"
#include "support/oracles.hpp"

using namespace steklov;
using steklov::testing::cylinder_pair;

namespace {

ModeProblem problem_for(const WarpProfile& p, double lambda, std::size_t n = 4096) {
    return make_mode_problem(p, lambda, make_grid(p, n));
}

}  // namespace

TEST(ModeMatrix, SingleElementEntries) {
    // Hand integration of the two P1 shape functions on [0, 1] with h = 1, lambda = 1:
    // diagonal 1 + 1/3, off-diagonal -1 + 1/6.
    auto p = make_cylinder(1.0);
    auto problem = make_mode_problem(p, 1.0, make_uniform_grid(1.0, 1));
    auto a = assemble_mode_matrix(problem);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_NEAR(a(0, 0), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(a(1, 1), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(a(0, 1), -5.0 / 6.0, 1e-15);
}

TEST(ModeMatrix, IsSymmetricAndRowsSumToMassForConstantH) {
    auto p = make_plateau_family(1.0, 0.1, 3.0);
    auto problem = make_mode_problem(p, 0.0, make_grid(p, 64));
    auto a = assemble_mode_matrix(problem);
    // lambda = 0: constants are in the kernel.
    auto av = a.multiply(std::vector<double>(a.size(), 1.0));
    for (double v : av) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(ModeMatrix, QuadratureExactForQuadraticH) {
    // h(t) = 1 + t(1 - t) is quadratic so h^2 is quartic: 3-point Gauss is exact.
    WarpProfile p(1.0, ProfileKind::condition_h,
                  [](double t) { return WarpSample{1.0 + t * (1.0 - t), 1.0 - 2.0 * t}; }, "quadratic");
    auto problem = make_mode_problem(p, 0.0, make_uniform_grid(1.0, 1));
    auto a = assemble_mode_matrix(problem);
    // int_0^1 (1 + u)^2 dt with u = t - t^2.
    const double exact = 1.0 + 2.0 * (1.0 / 2.0 - 1.0 / 3.0) + (1.0 / 3.0 - 2.0 / 4.0 + 1.0 / 5.0);
    EXPECT_NEAR(a(0, 0), exact, 1e-14);
}

TEST(SchurDtn, CylinderLambdaZero) {
    for (double length : {1.0, 2.0}) {
        auto problem = problem_for(make_cylinder(length), 0.0, 256);
        auto dtn = schur_dtn(assemble_mode_matrix(problem), problem);
        ASSERT_EQ(dtn.dim, 2u);
        // S = (1/L) [[1, -1], [-1, 1]], eigenvalues {0, 2/L}.
        EXPECT_NEAR(dtn.s00, 1.0 / length, 1e-12);
        EXPECT_NEAR(dtn.s0L, -1.0 / length, 1e-12);
        EXPECT_NEAR(dtn.sLL, 1.0 / length, 1e-12);
    }
}

TEST(SchurDtn, LiftsAreDiscreteHarmonic) {
    auto problem = problem_for(make_plateau_family(1.0, 0.1, 5.0), 2.0, 128);
    auto a = assemble_mode_matrix(problem);
    auto dtn = schur_dtn(a, problem);
    for (const auto& lift : dtn.lifts) {
        auto r = a.multiply(lift);
        for (std::size_t i = 1; i + 1 < r.size(); ++i) EXPECT_NEAR(r[i], 0.0, 1e-10);
    }
    EXPECT_DOUBLE_EQ(dtn.lifts[0].front(), 1.0);
    EXPECT_DOUBLE_EQ(dtn.lifts[1].back(), 1.0);
}

TEST(SchurDtn, RevolutionIsScalar) {
    auto problem = problem_for(make_capped_profile(1.0, 1.0), 2.0, 256);
    auto dtn = schur_dtn(assemble_mode_matrix(problem), problem);
    EXPECT_EQ(dtn.dim, 1u);
    EXPECT_NEAR(dtn.s00 / problem.w0, 1.0, 1e-5);
}

TEST(ModeFem, CylinderClosedForms) {
    for (double length : {1.0, 2.0})
        for (double lambda : {1.0, 2.0, 6.0}) {
            auto sol = solve_mode_fem(problem_for(make_cylinder(length), lambda));
            auto [s1, s2] = cylinder_pair(length, lambda);
            EXPECT_NEAR(sol.sigma_1 / s1, 1.0, 1e-6) << length << ' ' << lambda;
            ASSERT_TRUE(sol.sigma_2);
            EXPECT_NEAR(*sol.sigma_2 / s2, 1.0, 1e-6) << length << ' ' << lambda;
        }
}

TEST(ModeFem, CylinderLambdaZero) {
    auto sol = solve_mode_fem(problem_for(make_cylinder(1.0), 0.0));
    EXPECT_EQ(sol.sigma_1, 0.0);
    EXPECT_NEAR(*sol.sigma_2, 2.0, 1e-9);
    for (double v : sol.a_1) EXPECT_NEAR(v, sol.a_1.front(), 1e-13);
    EXPECT_GT(sol.a_1.front(), 0.0);
}

TEST(ModeFem, PlateauLambdaZeroMatchesQuadrature) {
    auto p = make_plateau_family(1.0, 0.05, 20.0);
    auto est = solve_mode_with_estimate(p, 0.0, 4096);
    const double exact = 2.0 / steklov::testing::inverse_square_integral(p);
    EXPECT_EQ(est.solution.sigma_1, 0.0);
    EXPECT_LE(std::abs(*est.solution.sigma_2 - exact), 1.5 * *est.sigma_2_error);
    EXPECT_NEAR(*est.solution.sigma_2 / exact, 1.0, 1e-4);
}

TEST(ModeFem, PlateauBelowHalfLengthTimesLambda) {
    auto sol = solve_mode_fem(problem_for(make_plateau_family(1.0, 0.05, 20.0), 2.0));
    EXPECT_LT(sol.sigma_1, 1.0);
    EXPECT_GT(sol.sigma_1, 0.9);
}

TEST(ModeFem, EigenfunctionsNormalizedOrthogonalAndResidualSmall) {
    auto problem = problem_for(random_admissible_profile(5), 6.0, 1024);
    auto sol = solve_mode_fem(problem);
    auto b = [&](const std::vector<double>& x, const std::vector<double>& y) {
        return problem.w0 * x.front() * y.front() + problem.wL * x.back() * y.back();
    };
    EXPECT_NEAR(b(sol.a_1, sol.a_1), 1.0, 1e-12);
    EXPECT_NEAR(b(sol.a_2, sol.a_2), 1.0, 1e-12);
    EXPECT_NEAR(b(sol.a_1, sol.a_2), 0.0, 1e-12);
    ASSERT_EQ(sol.residuals.size(), 2u);
    for (double r : sol.residuals) EXPECT_LT(r, 1e-10);
}

TEST(ModeFem, RejectsRevolutionProfile) {
    EXPECT_THROW(solve_mode_fem(problem_for(make_capped_profile(1.0, 1.0), 2.0, 64)), DomainError);
}

TEST(ModeRevolution, BallValues) {
    for (int j = 1; j <= 3; ++j) {
        auto sol = solve_mode_revolution(problem_for(make_capped_profile(1.0, 1.0), j * (j + 1.0)));
        EXPECT_NEAR(sol.sigma_1, j, 1e-6 * j);
        EXPECT_FALSE(sol.sigma_2);
        EXPECT_DOUBLE_EQ(sol.a_1.back(), 0.0);
    }
}

TEST(ModeRevolution, LambdaZero) {
    auto sol = solve_mode_revolution(problem_for(make_capped_profile(1.0, 2.0), 0.0, 64));
    EXPECT_EQ(sol.sigma_1, 0.0);
    for (double v : sol.a_1) EXPECT_DOUBLE_EQ(v, sol.a_1.front());
}

TEST(ModeRevolution, BelowBound) {
    auto p = make_revolution_plateau(1.0, 0.05, 1.0);
    auto sol = solve_mode(problem_for(p, 2.0));
    EXPECT_LT(sol.sigma_1, 2.0);
    EXPECT_GT(sol.sigma_1, 1.7);
}

TEST(MakeModeProblem, Validation) {
    auto p = make_cylinder(1.0);
    EXPECT_THROW(make_mode_problem(p, -1.0, make_uniform_grid(1.0, 8)), DomainError);
    EXPECT_THROW(make_mode_problem(p, 1.0, make_uniform_grid(2.0, 8)), DomainError);
    EXPECT_THROW(make_mode_problem(p, 1.0, Grid{{0.0, 0.6, 0.5, 1.0}}), DomainError);
    WarpProfile vanishing(1.0, ProfileKind::condition_h, [](double t) { return WarpSample{t, 1.0}; }, "vanishing");
    EXPECT_THROW(make_mode_problem(vanishing, 1.0, make_uniform_grid(1.0, 8)), DomainError);
}

TEST(Rayleigh, ConstantOnCylinder) {
    for (double length : {1.0, 2.0})
        for (double lambda : {1.0, 6.0}) {
            auto problem = problem_for(make_cylinder(length), lambda, 64);
            std::vector<double> one(problem.grid.nodes.size(), 1.0);
            EXPECT_NEAR(rayleigh_quotient(one, problem), length * lambda / 2.0, 1e-12);
        }
}

TEST(Rayleigh, EigenfunctionAttainsMinimum) {
    auto problem = problem_for(make_plateau_family(1.0, 0.1, 10.0), 2.0);
    auto sol = solve_mode_fem(problem);
    EXPECT_NEAR(rayleigh_quotient(sol.a_1, problem), sol.sigma_1, 1e-10);
    EXPECT_NEAR(rayleigh_quotient(sol.a_2, problem), *sol.sigma_2, 1e-10);
}

TEST(Rayleigh, TentFunctionOnCollapsingFamily) {
    for (double eps : {0.1, 0.05, 0.01}) {
        const double lambda = 2.0;
        auto p = make_plateau_family(1.0, eps, eps * eps);
        GridOptions go;
        go.extra_breakpoints = {3 * eps};
        auto problem = make_mode_problem(p, lambda, make_grid(p, 4096, go));
        auto tent = steklov::testing::tent_function(problem.grid.nodes, eps);
        const double r = rayleigh_quotient(tent, problem);
        // Exact value for the piecewise-linear tent: lambda 7 eps / 3 + eps^3.
        EXPECT_NEAR(r, lambda * 7.0 * eps / 3.0 + eps * eps * eps, 1e-9);
        EXPECT_LE(r, 3.0 * lambda * eps + eps * eps * eps);
    }
}

TEST(Rayleigh, ZeroTraceRejected) {
    auto problem = problem_for(make_cylinder(1.0), 1.0, 16);
    std::vector<double> a(problem.grid.nodes.size(), 0.0);
    a[5] = 1.0;
    EXPECT_THROW(rayleigh_quotient(a, problem), DomainError);
}

TEST(Rayleigh, VariationalConsistencyOnRandomTestFunctions) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto problem = problem_for(random_admissible_profile(seed), 2.0, 512);
        auto sol = solve_mode_fem(problem);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> a(problem.grid.nodes.size());
            double c = g(rng);
            for (auto& v : a) v = c + 0.1 * g(rng);
            a.front() = 1.0 + g(rng);
            EXPECT_GE(rayleigh_quotient(a, problem), sol.sigma_1 - 1e-10);
        }
    }
}

TEST(ModeFem, MonotoneInH) {
    double previous = 0.0;
    for (double plateau : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        auto sol = solve_mode_fem(problem_for(make_plateau_family(1.0, 0.1, plateau), 2.0, 1024));
        EXPECT_GE(sol.sigma_1, previous);
        previous = sol.sigma_1;
    }
}

TEST(ModeFem, CylinderSecondOrderConvergence) {
    const double exact = cylinder_pair(2.0, 6.0).first;
    double previous = 0.0;
    for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
        const double err = std::abs(solve_mode_fem(problem_for(make_cylinder(2.0), 6.0, n)).sigma_1 - exact);
        if (previous > 0.0) {
            EXPECT_GT(previous / err, 3.5);
            EXPECT_LT(previous / err, 4.5);
        }
        previous = err;
    }
}

TEST(ModeFem, ErrorEstimateBracketsTrueError) {
    const double exact = cylinder_pair(1.0, 2.0).first;
    auto est = solve_mode_with_estimate(make_cylinder(1.0), 2.0, 256);
    const double err = std::abs(est.solution.sigma_1 - exact);
    EXPECT_GT(est.sigma_1_error, 0.5 * err);
    EXPECT_LT(est.sigma_1_error, 2.0 * err);
    ASSERT_TRUE(est.sigma_2_error);
}
