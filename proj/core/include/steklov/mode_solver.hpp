#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "steklov/tridiagonal.hpp"
#include "steklov/warp_profile.hpp"

namespace steklov {

// One separated mode: (h^2 a')' = lambda a on [0, L] with Steklov conditions at
// the boundary nodes. The boundary weights are the areas h(0)^2, h(L)^2 of the
// boundary slices (|Sigma| = 1); wL = 0 for revolution profiles.
struct ModeProblem {
    WarpProfile profile;
    double lambda = 0.0;
    Grid grid;
    double w0 = 1.0;
    double wL = 1.0;
};

ModeProblem make_mode_problem(WarpProfile profile, double lambda, Grid grid);

enum class Engine { fem_schur, shooting };

std::string_view to_string(Engine engine);

// Eigenpairs of one mode, eigenfunctions sampled on the problem grid and
// normalized by w0 a(0)^2 + wL a(L)^2 = 1 with a(0) > 0. Revolution problems
// have a single eigenpair, so sigma_2 is empty and a_2 is empty.
struct ModeSolution {
    double sigma_1 = 0.0;
    std::optional<double> sigma_2;
    std::vector<double> a_1;
    std::vector<double> a_2;
    Engine engine = Engine::fem_schur;
    std::vector<double> residuals;
};

// Stiffness plus lambda-weighted mass for piecewise-linear elements:
// A[i][k] = int h^2 phi_i' phi_k' + lambda phi_i phi_k. h^2 is integrated with
// 3-point Gauss-Legendre per element; the mass part is exact.
SymmetricTridiagonal assemble_mode_matrix(const ModeProblem& problem);

// Discrete Dirichlet-to-Neumann operator: the Schur complement of the interior
// block. For condition_h profiles it is 2x2 on the nodes {0, L}; for revolution
// the node at L is pinned to zero first and S is 1x1 on node 0.
//
// lifts[b] is the discrete harmonic extension of unit data on boundary node b,
// so an eigenfunction with boundary values (b0, bL) is b0 lifts[0] + bL lifts[1].
struct DtnReduction {
    std::size_t dim = 2;
    double s00 = 0.0;
    double s0L = 0.0;
    double sLL = 0.0;
    std::array<std::vector<double>, 2> lifts;
};

DtnReduction schur_dtn(const SymmetricTridiagonal& a, const ModeProblem& problem);

// Two-boundary solve: Schur reduction followed by the closed-form 2x2
// generalized eigenproblem S v = sigma diag(w0, wL) v.
ModeSolution solve_mode_fem(const ModeProblem& problem);

// Revolution solve on a grid graded toward the pole, Dirichlet at t = L.
// lambda = 0 returns sigma = 0 with a constant eigenfunction.
ModeSolution solve_mode_revolution(const ModeProblem& problem);

// Dispatches on profile kind.
ModeSolution solve_mode(const ModeProblem& problem);

// (int a'^2 h^2 + lambda a^2) / (w0 a(0)^2 + wL a(L)^2) for a sampled on grid
// nodes, using the assembly quadrature. Throws DomainError on zero boundary trace.
double rayleigh_quotient(std::span<const double> a, const ModeProblem& problem);

// Relative residual |A a - sigma B a| / |A a| where B carries the boundary weights.
// For revolution the pinned node is excluded.
double eigen_residual(const SymmetricTridiagonal& a_matrix, const ModeProblem& problem,
                      std::span<const double> a, double sigma);

struct ErrorEstimatedSolution {
    ModeSolution solution;
    double sigma_1_error = 0.0;
    std::optional<double> sigma_2_error;
};

// FEM solve on make_grid(profile, n) with a discretization-error estimate taken
// from the same solve on make_grid(profile, 2n): |sigma_n - sigma_2n| * 4/3.
ErrorEstimatedSolution solve_mode_with_estimate(const WarpProfile& profile, double lambda,
                                                std::size_t n, const GridOptions& grid_options = {});

}  // namespace steklov
