#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

// condition_h: h > 0 on [0, L] with h(0) = h(L) = 1 (two boundary components).
// revolution:  h > 0 on [0, L) with h(L) = 0, h'(L) = -1 (the pole of a 3-ball).
enum class ProfileKind { condition_h, revolution };

std::string_view to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

struct WarpSample {
    double h = 0.0;
    double dh = 0.0;
};

// Warping function h of the metric dt^2 + h(t)^2 g on [0, L]. Carries h' alongside
// h, and the list of points where h is only piecewise smooth (grids and the
// shooting integrator both split there).
class WarpProfile {
public:
    using Evaluator = std::function<WarpSample(double)>;

    WarpProfile(double length, ProfileKind kind, Evaluator evaluator, std::string label,
                std::vector<double> breakpoints = {});

    double length() const noexcept { return length_; }
    ProfileKind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }

    WarpSample operator()(double t) const { return (*evaluator_)(t); }
    double h(double t) const { return (*evaluator_)(t).h; }
    double dh(double t) const { return (*evaluator_)(t).dh; }

    // Interior breakpoints, strictly inside (0, L), sorted.
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }

private:
    double length_;
    ProfileKind kind_;
    std::shared_ptr<const Evaluator> evaluator_;
    std::string label_;
    std::vector<double> breakpoints_;
};

// h == 1.
WarpProfile make_cylinder(double length);

// Equal to end_value on [0, eps] and [L - eps, L], equal to plateau on
// [2 eps, L - 2 eps], joined by the quintic smoothstep 6x^5 - 15x^4 + 10x^3.
// plateau = 1/eps gives the maximizing family, plateau = eps^2 the collapsing one.
WarpProfile make_plateau_family(double length, double epsilon, double plateau,
                                double end_value = 1.0);

// Revolution profile: h0 on [0, eps], h0/eps on [2 eps, L - 2 eps], L - t on
// [L - eps, L]. The right transition blends the plateau into L - t so that
// h(L) = 0 and h'(L) = -1 hold exactly.
WarpProfile make_revolution_plateau(double length, double epsilon, double h0);

// h(t) = (L - t) (1 + (h0/L - 1) cos^2(pi t / 2L)).
// h(0) = h0, h(L) = 0, h'(L) = -1, and h > 0 on [0, L). For h0 = L this is the
// flat Euclidean ball of radius L.
WarpProfile make_capped_profile(double length, double h0);

// Monotone piecewise-cubic (PCHIP) interpolant of sampled values. t must start
// at 0, be strictly increasing, and end at L.
WarpProfile make_table_profile(std::vector<double> t, std::vector<double> h, ProfileKind kind,
                               std::string label = "table");

struct ValidationOptions {
    std::size_t samples = 10000;
    double endpoint_tolerance = 1e-12;
    double slope_tolerance = 1e-9;
    double derivative_tolerance = 1e-6;
};

struct ValidationReport {
    bool pass = true;
    std::optional<double> location;
    std::string message;

    explicit operator bool() const noexcept { return pass; }
};

ValidationReport validate(const WarpProfile& profile, const ValidationOptions& options = {});

// Same as validate, but throws DomainError carrying the report message.
void require_valid(const WarpProfile& profile);

enum class GridGrading { uniform, graded_right };

struct Grid {
    std::vector<double> nodes;
    GridGrading grading = GridGrading::uniform;

    std::size_t n_elements() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
    double length() const noexcept { return nodes.empty() ? 0.0 : nodes.back(); }
};

struct GridOptions {
    double grading_ratio = 0.9;
    double min_element_fraction = 1e-8;
    // Extra points to insert as nodes, in addition to the profile breakpoints.
    std::vector<double> extra_breakpoints;
};

// Uniform grid with n elements spread over the profile's smooth pieces in
// proportion to their length; every breakpoint becomes a node. For revolution
// profiles a geometrically graded layer is appended toward t = L, starting from
// an element of size min_element_fraction * L and growing by 1/grading_ratio
// until it reaches the uniform size L/n.
Grid make_grid(const WarpProfile& profile, std::size_t n, const GridOptions& options = {});

// Uniform grid on [0, length] with exactly n elements and the given breakpoints.
Grid make_uniform_grid(double length, std::size_t n, std::span<const double> breakpoints = {});

}  // namespace steklov
