#include "steklov/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

namespace odeint = boost::numeric::odeint;

// (a, p) with p = h^2 a'.
using State = std::array<double, 2>;

class ModeSystem {
public:
    ModeSystem(const WarpProfile& profile, double lambda) : profile_(profile), lambda_(lambda) {}

    void operator()(const State& x, State& dxdt, double t) const {
        const double h = profile_.h(t);
        dxdt[0] = x[1] / (h * h);
        dxdt[1] = lambda_ * x[0];
    }

private:
    const WarpProfile& profile_;
    double lambda_;
};

class Integrator {
public:
    Integrator(const ModeProblem& problem, const ShootingOptions& options)
        : system_(problem.profile, problem.lambda), options_(options) {
        const auto b = problem.profile.breakpoints();
        stops_.assign(b.begin(), b.end());
    }

    // Advances x from t0 to t1, restarting the stepper at every breakpoint in between.
    void advance(State& x, double t0, double t1) const {
        std::vector<double> cuts{t0};
        for (double b : stops_)
            if ((b - t0) * (t1 - b) > 0.0) cuts.push_back(b);
        cuts.push_back(t1);
        if (t1 < t0) std::sort(cuts.begin() + 1, cuts.end() - 1, std::greater<>());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double span = cuts[k + 1] - cuts[k];
            if (span == 0.0) continue;
            auto stepper = odeint::make_controlled(options_.absolute_tolerance, options_.relative_tolerance,
                                                   odeint::runge_kutta_dopri5<State>());
            odeint::integrate_adaptive(stepper, system_, x, cuts[k], cuts[k + 1], span * 1e-3);
        }
    }

    // Samples the trajectory on increasing (forward) or decreasing (backward) times.
    std::vector<double> sample(State x, std::span<const double> times) const {
        std::vector<double> a;
        a.reserve(times.size());
        a.push_back(x[0]);
        for (std::size_t i = 1; i < times.size(); ++i) {
            advance(x, times[i - 1], times[i]);
            a.push_back(x[0]);
        }
        return a;
    }

private:
    ModeSystem system_;
    const ShootingOptions& options_;
    std::vector<double> stops_;
};

State initial_state(const ModeProblem& problem, double sigma) { return {1.0, -sigma * problem.w0}; }

double mismatch_scale(const ModeProblem& problem, const State& end, double sigma) {
    return std::abs(end[1]) + std::abs(sigma * problem.wL * end[0]);
}

void normalize(std::vector<double>& a, const ModeProblem& problem) {
    const double trace = std::sqrt(problem.w0 * a.front() * a.front() + problem.wL * a.back() * a.back());
    const double sign = (a.front() != 0.0 ? a.front() : a.back()) < 0.0 ? -1.0 : 1.0;
    for (double& x : a) x *= sign / trace;
}

}  // namespace

double frobenius_exponent(double lambda) { return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * lambda)); }

double shooting_mismatch(const ModeProblem& problem, double sigma, const ShootingOptions& options) {
    const Integrator integrator(problem, options);
    State x = initial_state(problem, sigma);
    integrator.advance(x, 0.0, problem.profile.length());
    return x[1] - sigma * problem.wL * x[0];
}

ModeSolution solve_mode_shooting(const ModeProblem& problem, const ShootingOptions& options) {
    if (problem.profile.kind() != ProfileKind::condition_h)
        throw DomainError("solve_mode_shooting expects a two-boundary profile");
    const double length = problem.profile.length();
    const double lambda = problem.lambda;
    const auto f = [&](double sigma) { return shooting_mismatch(problem, sigma, options); };

    // lambda = 0: the constants give sigma = 0 exactly; only the second root is searched.
    const std::size_t needed = lambda == 0.0 ? 1 : 2;
    const double low = options.bracket_low;
    double high = options.bracket_high.value_or(lambda > 0.0 ? 2.0 * length * lambda : 4.0 / length);
    const std::size_t points = std::max<std::size_t>(options.scan_points, 4);

    std::vector<std::pair<double, double>> brackets;
    std::vector<std::pair<double, double>> values;
    for (int attempt = 0; attempt <= options.max_widenings; ++attempt) {
        brackets.clear();
        values.clear();
        std::vector<double> sigmas(points);
        std::vector<double> fs(points);
        for (std::size_t i = 0; i < points; ++i) {
            sigmas[i] = low + (high - low) * static_cast<double>(i) / static_cast<double>(points - 1);
            fs[i] = f(sigmas[i]);
        }
        for (std::size_t i = 1; i < points; ++i) {
            if (fs[i - 1] == 0.0 || (fs[i - 1] < 0.0) != (fs[i] < 0.0)) {
                brackets.emplace_back(sigmas[i - 1], sigmas[i]);
                values.emplace_back(fs[i - 1], fs[i]);
            }
        }
        if (brackets.size() >= needed) break;

        // Two close roots can share a scan cell. F is a convex quadratic in sigma
        // (the trajectory is affine in sigma), so split at its minimizer.
        const auto smallest = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
        if (needed == 2 && brackets.empty() && smallest + 1 < points && fs[smallest] > 0.0) {
            const double a = sigmas[smallest == 0 ? 0 : smallest - 1];
            const double b = sigmas[smallest + 1];
            const auto [sigma_min, f_min] = boost::math::tools::brent_find_minima(f, a, b, 52);
            if (f_min < 0.0) {
                brackets = {{a, sigma_min}, {sigma_min, b}};
                values = {{f(a), f_min}, {f_min, f(b)}};
                break;
            }
        }
        high *= 2.0;
    }
    if (brackets.size() < needed)
        throw RootNotFound("shooting found " + std::to_string(brackets.size()) + " of " + std::to_string(needed) +
                           " sign changes of the boundary mismatch up to sigma = " + std::to_string(high));

    std::vector<double> roots;
    if (needed == 1) roots.push_back(0.0);
    for (std::size_t k = 0; k < needed; ++k) {
        auto [a, b] = brackets[k];
        auto [fa, fb] = values[k];
        if (fa == 0.0) {
            roots.push_back(a);
            continue;
        }
        std::uintmax_t max_iter = 200;
        const double tol = options.root_tolerance;
        const auto r = boost::math::tools::toms748_solve(
            f, a, b, fa, fb, [tol](double x, double y) { return std::abs(y - x) <= tol * std::max(1.0, std::abs(x)); },
            max_iter);
        roots.push_back(0.5 * (r.first + r.second));
    }

    const Integrator integrator(problem, options);
    const auto& nodes = problem.grid.nodes;
    ModeSolution solution;
    solution.engine = Engine::shooting;
    solution.sigma_1 = roots[0];
    solution.sigma_2 = roots[1];
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<double> a = integrator.sample(initial_state(problem, roots[k]), nodes);
        State end = initial_state(problem, roots[k]);
        integrator.advance(end, 0.0, length);
        const double scale = mismatch_scale(problem, end, roots[k]);
        const double residual = std::abs(end[1] - roots[k] * problem.wL * end[0]);
        solution.residuals.push_back(scale > 0.0 ? residual / scale : residual);
        normalize(a, problem);
        (k == 0 ? solution.a_1 : solution.a_2) = std::move(a);
    }
    return solution;
}

ModeSolution solve_mode_revolution_shooting(const ModeProblem& problem, const ShootingOptions& options) {
    if (problem.profile.kind() != ProfileKind::revolution)
        throw DomainError("solve_mode_revolution_shooting expects a revolution profile");
    const auto& nodes = problem.grid.nodes;
    const double length = problem.profile.length();
    ModeSolution solution;
    solution.engine = Engine::shooting;
    if (problem.lambda == 0.0) {
        solution.sigma_1 = 0.0;
        solution.a_1.assign(nodes.size(), 1.0 / std::sqrt(problem.w0));
        solution.residuals = {0.0};
        return solution;
    }

    const double alpha = frobenius_exponent(problem.lambda);
    const double delta = options.frobenius_offset * length;
    const double seed_t = length - delta;
    const double h_seed = problem.profile.h(seed_t);
    // a = ((L - t) / delta)^alpha near the pole.
    const State seed{1.0, h_seed * h_seed * (-alpha / delta)};
    const Integrator integrator(problem, options);

    // Backward sampling: seed, then the grid nodes left of it in decreasing order.
    std::vector<double> times{seed_t};
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it)
        if (*it < seed_t) times.push_back(*it);
    std::vector<double> sampled = integrator.sample(seed, times);

    State end = seed;
    integrator.advance(end, seed_t, 0.0);
    solution.sigma_1 = -end[1] / (problem.w0 * end[0]);
    solution.residuals = {0.0};

    std::vector<double> a(nodes.size(), 0.0);
    std::size_t next = sampled.size() - 1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] < seed_t)
            a[i] = sampled[next--];
        else
            a[i] = std::pow(std::max(0.0, length - nodes[i]) / delta, alpha);
    }
    const double scale = 1.0 / (std::sqrt(problem.w0) * a.front());
    for (double& x : a) x *= scale;
    solution.a_1 = std::move(a);
    return solution;
}

}  // namespace steklov
