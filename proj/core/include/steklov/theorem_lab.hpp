#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/cross_section.hpp"
#include "steklov/mode_solver.hpp"
#include "steklov/warp_profile.hpp"

namespace steklov {

// Executable experiments for the bounds, extremal families and gap estimates.
//
//   upper_bound       sigma_{j,1}(h) < L lambda_j / 2 for profiles with h(0) = h(L) = 1
//   supremum          plateau 1/eps pushes sigma_j toward L lambda_j / 2
//   collapse          plateau eps^2 drives sigma_j to 0 below 3 lambda eps + eps^3
//   stability         h <= c on [L1, L2] keeps sigma_j below L lambda_j / 2 - gamma
//   revolution_bound  sigma_(j) < L lambda_(j) / h(0)^2 on the 3-ball
//   revolution_gap    sigma_(j+1) - sigma_(j) < L (lambda_(j+1) - lambda_(j)) / h(0)^2
enum class Statement { upper_bound, supremum, collapse, stability, revolution_bound, revolution_gap };

std::string_view to_string(Statement statement);
Statement parse_statement(std::string_view name);

struct NamedValue {
    std::string name;
    double value = 0.0;
};

// One inequality computed <= bound (or < bound when strict). margin = bound - computed.
// A strict check passes when margin > strict_tolerance and margin exceeds
// error_safety times the discretization-error estimate; a non-strict check
// passes when margin >= -strict_tolerance.
struct BoundCheck {
    std::string quantity;
    double computed = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double error_estimate = 0.0;
    bool strict = true;
    bool pass = false;
};

struct BoundReport {
    Statement statement = Statement::upper_bound;
    std::vector<NamedValue> parameters;
    std::vector<BoundCheck> checks;
    std::vector<std::string> failures;
    bool pass = false;
};

struct SweepPoint {
    double epsilon = 0.0;
    double value = 0.0;
    double bound = 0.0;
    double error_estimate = 0.0;
    // max |a(t) - 1| of the first eigenfunction normalized to a(0) = 1.
    std::optional<double> sup_deviation;
    // Whether the second branch of the mode already exceeds the bound.
    std::optional<bool> second_branch_above;
};

struct SweepSeries {
    std::string quantity;
    std::size_t mode = 0;
    std::vector<SweepPoint> points;
    std::optional<double> fitted_exponent;
};

struct SweepReport {
    Statement statement = Statement::supremum;
    std::vector<NamedValue> parameters;
    std::vector<SweepSeries> series;
    std::vector<std::string> failures;
    bool pass = false;
};

struct LabOptions {
    std::size_t mesh = 4096;
    GridOptions grid;
    double strict_tolerance = 1e-8;
    double error_safety = 10.0;
};

BoundCheck make_check(std::string quantity, double computed, double bound, double error_estimate,
                      bool strict, const LabOptions& options);

// For 1 <= j <= j_max: sigma_{j,1}(h) < L lambda_j / 2, and for every counted
// index k up to the last copy of mode j_max, sigma_k <= sigma_{j(k),1}.
BoundReport check_upper_bound(const WarpProfile& profile, const CrossSectionSpectrum& cross_section,
                              std::size_t j_max, const LabOptions& options = {});

// Runs plateau families with plateau 1/eps. eps_list must be decreasing in (0, L/4)
// and the cross-section must have an entry beyond j_max.
SweepReport supremum_sweep(double length, const CrossSectionSpectrum& cross_section, std::size_t j_max,
                           std::span<const double> eps_list, const LabOptions& options = {});

// Runs plateau families with plateau eps^2 for a single Laplace eigenvalue.
SweepReport collapse_sweep(double length, double lambda, std::span<const double> eps_list,
                           const LabOptions& options = {});

struct StabilityGamma {
    double gamma = 0.0;
    double delta = 0.0;
    // true when the window-limited value lambda (L2 - L1) / 4 is selected.
    bool width_branch = false;
};

StabilityGamma stability_gamma(double lambda, double width, double c);

// Throws PreconditionError unless 0 < L1 < L2 < L and h <= c on [L1, L2].
BoundReport stability_check(double l1, double l2, double c, double lambda, const WarpProfile& profile,
                            const LabOptions& options = {});

// Revolution checks use the unit-radius sphere, lambda_(j) = j(j+1).
BoundReport revolution_bound_check(const WarpProfile& profile, std::size_t j_max,
                                   const LabOptions& options = {});

// Gaps j = 0 .. j_max - 1.
BoundReport revolution_gap_check(const WarpProfile& profile, std::size_t j_max,
                                 const LabOptions& options = {});

// Revolution plateau family at fixed h0: one series per sigma_(j), 1 <= j <= j_max,
// and one per gap j = 0 .. j_max - 1, each with its bound.
SweepReport revolution_sweep(double length, double h0, std::size_t j_max, std::span<const double> eps_list,
                             const LabOptions& options = {});

struct FrobeniusFit {
    double exponent = 0.0;
    double expected = 0.0;
    std::size_t points = 0;
};

// Least-squares slope of log|a| against log(L - t) over grid nodes with
// L - t in [s_low, s_high]. Defaults to the last decade of the graded layer,
// [10 s_min, 100 s_min] where s_min is the smallest element.
FrobeniusFit fit_frobenius_exponent(const ModeSolution& solution, const Grid& grid, double lambda,
                                    std::optional<double> s_low = {}, std::optional<double> s_high = {});

// Least-squares slope of log y against log x.
double fit_power_law_exponent(std::span<const double> x, std::span<const double> y);

// Seeded admissible profile with h(0) = h(L) = 1:
// h = exp(sum_{k=1..4} c_k sin(k pi t / L)), c_k uniform in [-0.4/k, 0.4/k],
// tabulated at 65 points and PCHIP-interpolated.
WarpProfile random_admissible_profile(std::uint64_t seed, double length = 1.0);

}  // namespace steklov
