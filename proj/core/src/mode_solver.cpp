#include "steklov/mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

// 3-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 3> kGaussNodes{-0.7745966692414833770, 0.0, 0.7745966692414833770};
constexpr std::array<double, 3> kGaussWeights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

double integrate_h_squared(const WarpProfile& profile, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t g = 0; g < 3; ++g) {
        const double h = profile.h(mid + half * kGaussNodes[g]);
        sum += kGaussWeights[g] * h * h;
    }
    return sum * half;
}

double norm(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

void orient(std::vector<double>& a) {
    const double lead = a.front() != 0.0 ? a.front() : a.back();
    if (lead < 0.0)
        for (double& x : a) x = -x;
}

std::vector<double> combine(const DtnReduction& dtn, double b0, double bl) {
    std::vector<double> a(dtn.lifts[0].size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = b0 * dtn.lifts[0][i] + bl * dtn.lifts[1][i];
    return a;
}

}  // namespace

std::string_view to_string(Engine engine) {
    return engine == Engine::fem_schur ? "fem_schur" : "shooting";
}

ModeProblem make_mode_problem(WarpProfile profile, double lambda, Grid grid) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be finite and nonnegative");
    if (grid.nodes.size() < 2) throw DomainError("grid needs at least one element");
    if (grid.nodes.front() != 0.0 || std::abs(grid.nodes.back() - profile.length()) > 1e-12 * profile.length())
        throw DomainError("grid does not span [0, L] of the profile");
    for (std::size_t i = 1; i < grid.nodes.size(); ++i)
        if (!(grid.nodes[i] > grid.nodes[i - 1])) throw DomainError("grid nodes must be strictly increasing");

    const double h0 = profile.h(0.0);
    const double hl = profile.h(profile.length());
    ModeProblem problem{std::move(profile), lambda, std::move(grid), h0 * h0, 0.0};
    if (problem.profile.kind() == ProfileKind::condition_h) problem.wL = hl * hl;
    if (!(problem.w0 > 0.0)) throw DomainError("boundary weight h(0)^2 must be positive");
    if (problem.profile.kind() == ProfileKind::condition_h && !(problem.wL > 0.0))
        throw DomainError("boundary weight h(L)^2 must be positive");
    return problem;
}

SymmetricTridiagonal assemble_mode_matrix(const ModeProblem& problem) {
    const auto& nodes = problem.grid.nodes;
    SymmetricTridiagonal a(nodes.size());
    for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
        const double l = nodes[e + 1] - nodes[e];
        const double stiffness = integrate_h_squared(problem.profile, nodes[e], nodes[e + 1]) / (l * l);
        const double mass = problem.lambda * l / 6.0;
        a.diagonal[e] += stiffness + 2.0 * mass;
        a.diagonal[e + 1] += stiffness + 2.0 * mass;
        a.offdiagonal[e] += -stiffness + mass;
    }
    return a;
}

DtnReduction schur_dtn(const SymmetricTridiagonal& a, const ModeProblem& problem) {
    const std::size_t n = a.size();
    const bool revolution = problem.profile.kind() == ProfileKind::revolution;
    if (n < 2) throw NumericalError("mode matrix needs at least two nodes");
    if (problem.grid.nodes.size() != n) throw NumericalError("mode matrix does not match the problem grid");

    // Row sums of A come from the consistent mass alone (lambda l / 2 per element
    // end); taking them from the grid rather than from A avoids cancellation.
    std::vector<double> couplings(n - 1);
    std::vector<double> excess(n, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        couplings[e] = -a.offdiagonal[e];
        const double half_mass = 0.5 * problem.lambda * (problem.grid.nodes[e + 1] - problem.grid.nodes[e]);
        excess[e] += half_mass;
        excess[e + 1] += half_mass;
    }
    ChainCondensation chain = condense_chain(couplings, excess);

    DtnReduction dtn;
    dtn.dim = revolution ? 1 : 2;
    // For revolution the node at t = L is pinned to zero, so only the first lift is used.
    dtn.s00 = chain.coupling + chain.excess_first;
    dtn.lifts[0] = std::move(chain.lift_first);
    if (revolution) {
        dtn.lifts[1].assign(n, 0.0);
    } else {
        dtn.s0L = -chain.coupling;
        dtn.sLL = chain.coupling + chain.excess_last;
        dtn.lifts[1] = std::move(chain.lift_last);
    }
    return dtn;
}

double eigen_residual(const SymmetricTridiagonal& a_matrix, const ModeProblem& problem,
                      std::span<const double> a, double sigma) {
    const bool revolution = problem.profile.kind() == ProfileKind::revolution;
    const std::vector<double> av = a_matrix.multiply(a);
    const std::size_t rows = revolution ? av.size() - 1 : av.size();
    std::vector<double> r(av.begin(), av.begin() + static_cast<std::ptrdiff_t>(rows));
    r.front() -= sigma * problem.w0 * a.front();
    if (!revolution) r.back() -= sigma * problem.wL * a.back();
    const double denominator = norm(std::span<const double>(av.data(), rows));
    const double numerator = norm(r);
    return denominator > 0.0 ? numerator / denominator : numerator;
}

ModeSolution solve_mode_fem(const ModeProblem& problem) {
    if (problem.profile.kind() != ProfileKind::condition_h)
        throw DomainError("solve_mode_fem expects a two-boundary profile; use solve_mode_revolution");
    const SymmetricTridiagonal a = assemble_mode_matrix(problem);
    const DtnReduction dtn = schur_dtn(a, problem);

    // Symmetrized boundary operator W^{-1/2} S W^{-1/2}.
    const double r0 = 1.0 / std::sqrt(problem.w0);
    const double rl = 1.0 / std::sqrt(problem.wL);
    const double m00 = dtn.s00 * r0 * r0;
    const double m0l = dtn.s0L * r0 * rl;
    const double mll = dtn.sLL * rl * rl;
    const double mean = 0.5 * (m00 + mll);
    const double radius = std::hypot(0.5 * (m00 - mll), m0l);
    const double sigma_2 = mean + radius;
    double sigma_1 = sigma_2 > 0.0 ? (m00 * mll - m0l * m0l) / sigma_2 : mean - radius;
    // Constants are harmonic when lambda = 0, so the bottom of the spectrum is exactly zero.
    if (problem.lambda == 0.0 || (sigma_1 < 0.0 && std::abs(sigma_1) <= 1e-12 * std::max(1.0, sigma_2)))
        sigma_1 = 0.0;

    // Eigenvector of sigma_1 from the better-conditioned row; the second is its rotation.
    double v0 = m0l;
    double vl = sigma_1 - m00;
    if (std::hypot(sigma_1 - mll, m0l) > std::hypot(v0, vl)) {
        v0 = sigma_1 - mll;
        vl = m0l;
    }
    const double len = std::hypot(v0, vl);
    if (len == 0.0) {
        v0 = 1.0;
        vl = 0.0;
    } else {
        v0 /= len;
        vl /= len;
    }

    ModeSolution solution;
    solution.engine = Engine::fem_schur;
    solution.sigma_1 = sigma_1;
    solution.sigma_2 = sigma_2;
    solution.a_1 = combine(dtn, v0 * r0, vl * rl);
    solution.a_2 = combine(dtn, -vl * r0, v0 * rl);
    orient(solution.a_1);
    orient(solution.a_2);
    solution.residuals = {eigen_residual(a, problem, solution.a_1, sigma_1),
                          eigen_residual(a, problem, solution.a_2, sigma_2)};
    return solution;
}

ModeSolution solve_mode_revolution(const ModeProblem& problem) {
    if (problem.profile.kind() != ProfileKind::revolution)
        throw DomainError("solve_mode_revolution expects a revolution profile");
    ModeSolution solution;
    solution.engine = Engine::fem_schur;
    const std::size_t n = problem.grid.nodes.size();
    if (problem.lambda == 0.0) {
        solution.sigma_1 = 0.0;
        solution.a_1.assign(n, 1.0 / std::sqrt(problem.w0));
        solution.residuals = {0.0};
        return solution;
    }
    const SymmetricTridiagonal a = assemble_mode_matrix(problem);
    const DtnReduction dtn = schur_dtn(a, problem);
    solution.sigma_1 = dtn.s00 / problem.w0;
    solution.a_1 = combine(dtn, 1.0 / std::sqrt(problem.w0), 0.0);
    solution.residuals = {eigen_residual(a, problem, solution.a_1, solution.sigma_1)};
    return solution;
}

ModeSolution solve_mode(const ModeProblem& problem) {
    return problem.profile.kind() == ProfileKind::revolution ? solve_mode_revolution(problem)
                                                             : solve_mode_fem(problem);
}

double rayleigh_quotient(std::span<const double> a, const ModeProblem& problem) {
    const auto& nodes = problem.grid.nodes;
    if (a.size() != nodes.size()) throw DomainError("test function must be sampled on the grid nodes");
    const double trace = problem.w0 * a.front() * a.front() + problem.wL * a.back() * a.back();
    if (!(trace > 0.0)) throw DomainError("test function has zero boundary trace");
    // Element by element, so nearly constant functions do not lose digits.
    double energy = 0.0;
    for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
        const double l = nodes[e + 1] - nodes[e];
        const double slope = (a[e + 1] - a[e]) / l;
        energy += integrate_h_squared(problem.profile, nodes[e], nodes[e + 1]) * slope * slope;
        energy += problem.lambda * l / 3.0 * (a[e] * a[e] + a[e] * a[e + 1] + a[e + 1] * a[e + 1]);
    }
    return energy / trace;
}

ErrorEstimatedSolution solve_mode_with_estimate(const WarpProfile& profile, double lambda, std::size_t n,
                                                const GridOptions& grid_options) {
    ErrorEstimatedSolution out;
    out.solution = solve_mode(make_mode_problem(profile, lambda, make_grid(profile, n, grid_options)));
    const ModeSolution fine = solve_mode(make_mode_problem(profile, lambda, make_grid(profile, 2 * n, grid_options)));
    constexpr double richardson = 4.0 / 3.0;
    out.sigma_1_error = richardson * std::abs(out.solution.sigma_1 - fine.sigma_1);
    if (out.solution.sigma_2 && fine.sigma_2)
        out.sigma_2_error = richardson * std::abs(*out.solution.sigma_2 - *fine.sigma_2);
    return out;
}

}  // namespace steklov
