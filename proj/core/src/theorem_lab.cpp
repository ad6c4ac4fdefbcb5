#include "steklov/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/shooting.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

namespace {

std::string indexed(const char* name, std::size_t j) {
    return std::string(name) + "_" + std::to_string(j);
}

std::string indexed(const char* name, std::size_t j, int branch) {
    return std::string(name) + "_{" + std::to_string(j) + "," + std::to_string(branch) + "}";
}

void require_condition_h(const WarpProfile& profile) {
    if (profile.kind() != ProfileKind::condition_h)
        throw PreconditionError("profile " + profile.label() + " does not have h(0) = h(L) = 1 type");
    const ValidationReport report = validate(profile);
    if (!report) throw PreconditionError("profile " + profile.label() + " fails validation: " + report.message);
}

void require_revolution(const WarpProfile& profile) {
    if (profile.kind() != ProfileKind::revolution)
        throw PreconditionError("profile " + profile.label() + " is not a revolution profile");
    const ValidationReport report = validate(profile);
    if (!report) throw PreconditionError("profile " + profile.label() + " fails validation: " + report.message);
}

void require_eps_list(double length, std::span<const double> eps_list) {
    if (eps_list.empty()) throw DomainError("epsilon list is empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] < length / 4.0))
            throw DomainError("every epsilon must lie in (0, L/4)");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw DomainError("epsilon list must be decreasing");
    }
}

void finalize(BoundReport& report) {
    for (const auto& c : report.checks) {
        if (c.pass) continue;
        std::ostringstream os;
        os.precision(17);
        os << c.quantity << " = " << c.computed << (c.strict ? " is not below " : " exceeds ") << c.bound
           << " (margin " << c.margin << ", error estimate " << c.error_estimate << ")";
        report.failures.push_back(os.str());
    }
    report.pass = report.failures.empty();
}

// Union of the branches of the solved modes, multiplicity-expanded, sorted.
std::vector<double> partial_counted(std::span<const ErrorEstimatedSolution> modes,
                                    const CrossSectionSpectrum& cross_section) {
    std::vector<double> values;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const int m = cross_section[j].multiplicity;
        for (int k = 0; k < m; ++k) {
            values.push_back(modes[j].solution.sigma_1);
            if (modes[j].solution.sigma_2) values.push_back(*modes[j].solution.sigma_2);
        }
    }
    std::sort(values.begin(), values.end());
    return values;
}

double sup_deviation_from_one(const std::vector<double>& a) {
    double deviation = 0.0;
    for (double x : a) deviation = std::max(deviation, std::abs(x / a.front() - 1.0));
    return deviation;
}

void check_monotone(SweepReport& report, const SweepSeries& series, bool increasing, const char* what) {
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        const double prev = series.points[i - 1].value;
        const double cur = series.points[i].value;
        if (increasing ? !(cur > prev) : !(cur < prev)) {
            std::ostringstream os;
            os.precision(17);
            os << series.quantity << " is not strictly " << what << " between epsilon = "
               << series.points[i - 1].epsilon << " and " << series.points[i].epsilon << " (" << prev << " -> "
               << cur << ")";
            report.failures.push_back(os.str());
        }
    }
}

double sphere_eigenvalue(std::size_t j) {
    const double x = static_cast<double>(j);
    return x * (x + 1.0);
}

}  // namespace

std::string_view to_string(Statement statement) {
    switch (statement) {
    case Statement::upper_bound: return "upper_bound";
    case Statement::supremum: return "supremum";
    case Statement::collapse: return "collapse";
    case Statement::stability: return "stability";
    case Statement::revolution_bound: return "revolution_bound";
    case Statement::revolution_gap: return "revolution_gap";
    }
    return "upper_bound";
}

Statement parse_statement(std::string_view name) {
    for (Statement s : {Statement::upper_bound, Statement::supremum, Statement::collapse, Statement::stability,
                        Statement::revolution_bound, Statement::revolution_gap})
        if (to_string(s) == name) return s;
    throw ConfigurationError("unknown experiment '" + std::string(name) + "'");
}

BoundCheck make_check(std::string quantity, double computed, double bound, double error_estimate, bool strict,
                      const LabOptions& options) {
    BoundCheck check{std::move(quantity), computed, bound, bound - computed, error_estimate, strict, false};
    if (strict)
        check.pass = check.margin > options.strict_tolerance && check.margin > options.error_safety * error_estimate;
    else
        check.pass = check.margin >= -options.strict_tolerance;
    return check;
}

BoundReport check_upper_bound(const WarpProfile& profile, const CrossSectionSpectrum& cross_section,
                              std::size_t j_max, const LabOptions& options) {
    require_condition_h(profile);
    if (j_max < 1 || j_max >= cross_section.size())
        throw DomainError("upper-bound check needs 1 <= j_max < number of cross-section eigenvalues");
    const double length = profile.length();

    BoundReport report;
    report.statement = Statement::upper_bound;
    report.parameters = {{"L", length}, {"j_max", static_cast<double>(j_max)},
                         {"mesh", static_cast<double>(options.mesh)}};

    std::vector<ErrorEstimatedSolution> modes;
    for (std::size_t j = 0; j <= j_max; ++j)
        modes.push_back(solve_mode_with_estimate(profile, cross_section[j].lambda, options.mesh, options.grid));

    for (std::size_t j = 1; j <= j_max; ++j) {
        const double lambda = cross_section[j].lambda;
        report.checks.push_back(make_check(indexed("sigma", j, 1), modes[j].solution.sigma_1, length * lambda / 2.0,
                                           modes[j].sigma_1_error, true, options));
    }
    // Adding modes can only lower order statistics, so the partial union bounds sigma_k from above.
    const std::vector<double> counted = partial_counted(modes, cross_section);
    std::size_t k = 0;
    for (std::size_t j = 0; j <= j_max; ++j) {
        for (int m = 0; m < cross_section[j].multiplicity; ++m, ++k) {
            if (k == 0) continue;
            report.checks.push_back(make_check("sigma_" + std::to_string(k) + " <= " + indexed("sigma", j, 1),
                                               counted[k], modes[j].solution.sigma_1, modes[j].sigma_1_error, false,
                                               options));
        }
    }
    finalize(report);
    return report;
}

SweepReport supremum_sweep(double length, const CrossSectionSpectrum& cross_section, std::size_t j_max,
                           std::span<const double> eps_list, const LabOptions& options) {
    require_eps_list(length, eps_list);
    if (j_max < 1 || j_max + 1 >= cross_section.size())
        throw DomainError("supremum sweep needs a cross-section eigenvalue beyond j_max");

    SweepReport report;
    report.statement = Statement::supremum;
    report.parameters = {{"L", length}, {"j_max", static_cast<double>(j_max)},
                         {"mesh", static_cast<double>(options.mesh)}};
    for (std::size_t j = 1; j <= j_max; ++j) report.series.push_back({indexed("sigma", j), j, {}, {}});

    for (double eps : eps_list) {
        const WarpProfile profile = make_plateau_family(length, eps, 1.0 / eps);
        std::vector<ErrorEstimatedSolution> modes;
        std::vector<IndexedModeSolution> indexed_modes;
        SteklovSpectrum spectrum;
        const std::size_t count = cross_section.first_counted_index(j_max) + 1;
        for (std::size_t j = 0;; ++j) {
            if (j >= cross_section.size())
                throw InsufficientModes("cross-section too short for the supremum sweep", j);
            modes.push_back(solve_mode_with_estimate(profile, cross_section[j].lambda, options.mesh, options.grid));
            indexed_modes.push_back({j, modes.back().solution});
            if (j <= j_max) continue;
            try {
                spectrum = assemble(indexed_modes, cross_section, count);
                break;
            } catch (const InsufficientModes&) {
            }
        }
        for (std::size_t j = 1; j <= j_max; ++j) {
            const double lambda = cross_section[j].lambda;
            const double bound = length * lambda / 2.0;
            const auto& mode = modes[j];
            SweepPoint point;
            point.epsilon = eps;
            point.value = spectrum.counted[cross_section.first_counted_index(j)];
            point.bound = bound;
            point.error_estimate = mode.sigma_1_error;
            point.sup_deviation = sup_deviation_from_one(mode.solution.a_1);
            point.second_branch_above = mode.solution.sigma_2 && *mode.solution.sigma_2 > bound;
            report.series[j - 1].points.push_back(point);
        }
    }

    const LabOptions& o = options;
    for (auto& series : report.series) {
        for (const auto& p : series.points) {
            const BoundCheck c = make_check(series.quantity, p.value, p.bound, p.error_estimate, true, o);
            if (!c.pass) {
                std::ostringstream os;
                os.precision(17);
                os << series.quantity << " at epsilon = " << p.epsilon << " has deficit " << c.margin
                   << " (error estimate " << p.error_estimate << ")";
                report.failures.push_back(os.str());
            }
        }
        check_monotone(report, series, true, "increasing");
        for (std::size_t i = 1; i < series.points.size(); ++i) {
            if (!(*series.points[i].sup_deviation < *series.points[i - 1].sup_deviation))
                report.failures.push_back(series.quantity + " eigenfunction deviation from 1 is not decreasing");
        }
        // Asymptotic rate from the three smallest epsilon values.
        if (series.points.size() >= 3) {
            std::vector<double> x;
            std::vector<double> y;
            for (std::size_t i = series.points.size() - 3; i < series.points.size(); ++i) {
                x.push_back(series.points[i].epsilon);
                y.push_back(series.points[i].bound - series.points[i].value);
            }
            if (std::all_of(y.begin(), y.end(), [](double d) { return d > 0.0; }))
                series.fitted_exponent = fit_power_law_exponent(x, y);
        }
    }
    report.pass = report.failures.empty();
    return report;
}

SweepReport collapse_sweep(double length, double lambda, std::span<const double> eps_list,
                           const LabOptions& options) {
    require_eps_list(length, eps_list);
    if (!(lambda > 0.0)) throw DomainError("collapse sweep needs lambda > 0");

    SweepReport report;
    report.statement = Statement::collapse;
    report.parameters = {{"L", length}, {"lambda", lambda}, {"mesh", static_cast<double>(options.mesh)}};
    SweepSeries series{"sigma_1", 1, {}, {}};
    for (double eps : eps_list) {
        const WarpProfile profile = make_plateau_family(length, eps, eps * eps);
        GridOptions grid = options.grid;
        // The ramp of the comparison test function ends at 3 eps.
        grid.extra_breakpoints.push_back(3.0 * eps);
        const ErrorEstimatedSolution mode = solve_mode_with_estimate(profile, lambda, options.mesh, grid);
        SweepPoint point;
        point.epsilon = eps;
        point.value = mode.solution.sigma_1;
        point.bound = 3.0 * lambda * eps + eps * eps * eps;
        point.error_estimate = mode.sigma_1_error;
        const BoundCheck c = make_check(series.quantity, point.value, point.bound, point.error_estimate, false, options);
        if (!c.pass) {
            std::ostringstream os;
            os.precision(17);
            os << "sigma_1 = " << point.value << " exceeds 3 lambda eps + eps^3 = " << point.bound
               << " at epsilon = " << eps;
            report.failures.push_back(os.str());
        }
        series.points.push_back(point);
    }
    check_monotone(report, series, false, "decreasing");
    if (series.points.size() >= 3) {
        std::vector<double> x;
        std::vector<double> y;
        for (std::size_t i = series.points.size() - 3; i < series.points.size(); ++i) {
            x.push_back(series.points[i].epsilon);
            y.push_back(series.points[i].value);
        }
        series.fitted_exponent = fit_power_law_exponent(x, y);
    }
    report.series.push_back(std::move(series));
    report.pass = report.failures.empty();
    return report;
}

StabilityGamma stability_gamma(double lambda, double width, double c) {
    if (!(lambda > 0.0) || !(width > 0.0) || !(c > 0.0))
        throw DomainError("stability gamma needs lambda, width and c positive");
    const double denominator = 12.0 * c * c + lambda * width * width;
    const double width_delta = 2.0 / width;
    const double ceiling_delta = 3.0 * lambda * width / denominator;
    StabilityGamma g;
    g.width_branch = width_delta <= ceiling_delta;
    g.delta = std::min(width_delta, ceiling_delta);
    g.gamma = std::min(lambda * width / 4.0, 3.0 * lambda * lambda * width * width * width / (8.0 * denominator));
    return g;
}

BoundReport stability_check(double l1, double l2, double c, double lambda, const WarpProfile& profile,
                            const LabOptions& options) {
    require_condition_h(profile);
    const double length = profile.length();
    if (!(0.0 < l1 && l1 < l2 && l2 < length)) throw PreconditionError("stability window needs 0 < L1 < L2 < L");
    if (!(c > 0.0)) throw PreconditionError("stability ceiling c must be positive");
    constexpr std::size_t samples = 10001;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = l1 + (l2 - l1) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double h = profile.h(t);
        if (h > c * (1.0 + 1e-12)) {
            std::ostringstream os;
            os.precision(17);
            os << "h(" << t << ") = " << h << " exceeds c = " << c << " on [L1, L2]";
            throw PreconditionError(os.str());
        }
    }

    const double width = l2 - l1;
    const StabilityGamma g = stability_gamma(lambda, width, c);
    const double bound = length * lambda / 2.0 - g.gamma;

    BoundReport report;
    report.statement = Statement::stability;
    report.parameters = {{"L", length},      {"L1", l1},          {"L2", l2},
                         {"c", c},           {"lambda", lambda},  {"gamma", g.gamma},
                         {"delta", g.delta}, {"width_branch", g.width_branch ? 1.0 : 0.0},
                         {"mesh", static_cast<double>(options.mesh)}};

    GridOptions grid = options.grid;
    const double mid = 0.5 * (l1 + l2);
    grid.extra_breakpoints.insert(grid.extra_breakpoints.end(), {l1, mid, l2});
    const ErrorEstimatedSolution mode = solve_mode_with_estimate(profile, lambda, options.mesh, grid);
    report.checks.push_back(make_check("sigma_{1,1}", mode.solution.sigma_1, bound, mode.sigma_1_error, false, options));

    // Trapezoid comparison function: 1 outside [L1, L2], dipping with slope delta to the midpoint.
    const ModeProblem problem = make_mode_problem(profile, lambda, make_grid(profile, options.mesh, grid));
    std::vector<double> a;
    for (double t : problem.grid.nodes) {
        if (t <= l1 || t >= l2)
            a.push_back(1.0);
        else if (t <= mid)
            a.push_back(1.0 - g.delta * (t - l1));
        else
            a.push_back(1.0 + g.delta * (t - l2));
    }
    report.checks.push_back(make_check("R(trapezoid)", rayleigh_quotient(a, problem), bound, 0.0, false, options));
    finalize(report);
    return report;
}

BoundReport revolution_bound_check(const WarpProfile& profile, std::size_t j_max, const LabOptions& options) {
    require_revolution(profile);
    if (j_max < 1) throw DomainError("revolution bound check needs j_max >= 1");
    const double length = profile.length();
    const double h0 = profile.h(0.0);
    BoundReport report;
    report.statement = Statement::revolution_bound;
    report.parameters = {{"L", length}, {"h0", h0}, {"j_max", static_cast<double>(j_max)},
                         {"mesh", static_cast<double>(options.mesh)}};
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double lambda = sphere_eigenvalue(j);
        const ErrorEstimatedSolution mode = solve_mode_with_estimate(profile, lambda, options.mesh, options.grid);
        report.checks.push_back(make_check("sigma_(" + std::to_string(j) + ")", mode.solution.sigma_1,
                                           length * lambda / (h0 * h0), mode.sigma_1_error, true, options));
    }
    finalize(report);
    return report;
}

BoundReport revolution_gap_check(const WarpProfile& profile, std::size_t j_max, const LabOptions& options) {
    require_revolution(profile);
    if (j_max < 1) throw DomainError("revolution gap check needs j_max >= 1");
    const double length = profile.length();
    const double h0 = profile.h(0.0);
    BoundReport report;
    report.statement = Statement::revolution_gap;
    report.parameters = {{"L", length}, {"h0", h0}, {"j_max", static_cast<double>(j_max)},
                         {"mesh", static_cast<double>(options.mesh)}};
    std::vector<ErrorEstimatedSolution> modes;
    for (std::size_t j = 0; j <= j_max; ++j)
        modes.push_back(solve_mode_with_estimate(profile, sphere_eigenvalue(j), options.mesh, options.grid));
    for (std::size_t j = 0; j < j_max; ++j) {
        const double gap = modes[j + 1].solution.sigma_1 - modes[j].solution.sigma_1;
        const double bound = length * (sphere_eigenvalue(j + 1) - sphere_eigenvalue(j)) / (h0 * h0);
        report.checks.push_back(make_check(indexed("gap", j), gap, bound,
                                           modes[j].sigma_1_error + modes[j + 1].sigma_1_error, true, options));
    }
    finalize(report);
    return report;
}

SweepReport revolution_sweep(double length, double h0, std::size_t j_max, std::span<const double> eps_list,
                             const LabOptions& options) {
    require_eps_list(length, eps_list);
    if (j_max < 1) throw DomainError("revolution sweep needs j_max >= 1");
    if (!(h0 > 0.0)) throw DomainError("revolution sweep needs h0 > 0");

    SweepReport report;
    report.statement = Statement::revolution_gap;
    report.parameters = {{"L", length}, {"h0", h0}, {"j_max", static_cast<double>(j_max)},
                         {"mesh", static_cast<double>(options.mesh)}};
    for (std::size_t j = 1; j <= j_max; ++j) report.series.push_back({"sigma_(" + std::to_string(j) + ")", j, {}, {}});
    for (std::size_t j = 0; j < j_max; ++j) report.series.push_back({indexed("gap", j), j, {}, {}});

    for (double eps : eps_list) {
        const WarpProfile profile = make_revolution_plateau(length, eps, h0);
        std::vector<ErrorEstimatedSolution> modes;
        for (std::size_t j = 0; j <= j_max; ++j)
            modes.push_back(solve_mode_with_estimate(profile, sphere_eigenvalue(j), options.mesh, options.grid));
        for (std::size_t j = 1; j <= j_max; ++j) {
            SweepPoint p;
            p.epsilon = eps;
            p.value = modes[j].solution.sigma_1;
            p.bound = length * sphere_eigenvalue(j) / (h0 * h0);
            p.error_estimate = modes[j].sigma_1_error;
            report.series[j - 1].points.push_back(p);
        }
        for (std::size_t j = 0; j < j_max; ++j) {
            SweepPoint p;
            p.epsilon = eps;
            p.value = modes[j + 1].solution.sigma_1 - modes[j].solution.sigma_1;
            p.bound = length * (sphere_eigenvalue(j + 1) - sphere_eigenvalue(j)) / (h0 * h0);
            p.error_estimate = modes[j].sigma_1_error + modes[j + 1].sigma_1_error;
            report.series[j_max + j].points.push_back(p);
        }
    }

    for (auto& series : report.series) {
        for (const auto& p : series.points) {
            if (!make_check(series.quantity, p.value, p.bound, p.error_estimate, true, options).pass) {
                std::ostringstream os;
                os.precision(17);
                os << series.quantity << " = " << p.value << " is not strictly below " << p.bound
                   << " at epsilon = " << p.epsilon;
                report.failures.push_back(os.str());
            }
        }
        if (series.points.size() >= 3) {
            std::vector<double> x;
            std::vector<double> y;
            for (std::size_t i = series.points.size() - 3; i < series.points.size(); ++i) {
                x.push_back(series.points[i].epsilon);
                y.push_back(series.points[i].bound - series.points[i].value);
            }
            if (std::all_of(y.begin(), y.end(), [](double d) { return d > 0.0; }))
                series.fitted_exponent = fit_power_law_exponent(x, y);
        }
    }
    // sigma_(1) and gap_0 coincide; both must climb toward the bound.
    check_monotone(report, report.series.front(), true, "increasing");
    check_monotone(report, report.series[j_max], true, "increasing");
    report.pass = report.failures.empty();
    return report;
}

FrobeniusFit fit_frobenius_exponent(const ModeSolution& solution, const Grid& grid, double lambda,
                                    std::optional<double> s_low, std::optional<double> s_high) {
    const auto& nodes = grid.nodes;
    if (nodes.size() < 3 || solution.a_1.size() != nodes.size())
        throw DomainError("Frobenius fit needs an eigenfunction sampled on the grid");
    const double length = nodes.back();
    const double s_min = length - nodes[nodes.size() - 2];
    const double lo = s_low.value_or(10.0 * s_min);
    const double hi = s_high.value_or(100.0 * s_min);
    std::vector<double> s;
    std::vector<double> a;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double d = length - nodes[i];
        if (d >= lo && d <= hi && solution.a_1[i] != 0.0) {
            s.push_back(d);
            a.push_back(std::abs(solution.a_1[i]));
        }
    }
    if (s.size() < 2) throw DomainError("Frobenius fit window contains fewer than two nodes");
    return {fit_power_law_exponent(s, a), frobenius_exponent(lambda), s.size()};
}

double fit_power_law_exponent(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("power-law fit needs two or more points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("power-law fit needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

WarpProfile random_admissible_profile(std::uint64_t seed, double length) {
    std::mt19937_64 rng(seed);
    std::array<double, 4> coefficients{};
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        const double amplitude = 0.4 / static_cast<double>(k + 1);
        coefficients[k] = std::uniform_real_distribution<double>(-amplitude, amplitude)(rng);
    }
    constexpr std::size_t samples = 65;
    std::vector<double> t(samples);
    std::vector<double> h(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        t[i] = length * static_cast<double>(i) / static_cast<double>(samples - 1);
        double exponent = 0.0;
        for (std::size_t k = 0; k < coefficients.size(); ++k)
            exponent += coefficients[k] * std::sin(static_cast<double>(k + 1) * std::numbers::pi * t[i] / length);
        h[i] = std::exp(exponent);
    }
    t.back() = length;
    h.front() = 1.0;
    h.back() = 1.0;
    return make_table_profile(std::move(t), std::move(h), ProfileKind::condition_h,
                              "random(seed=" + std::to_string(seed) + ")");
}

}  // namespace steklov
