#include "steklov/warp_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

// Boost 1.74 pchip calls unqualified isnan.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

// Quintic smoothstep and its derivative on [0, 1].
double smoothstep(double x) { return x * x * x * (x * (6.0 * x - 15.0) + 10.0); }
double smoothstep_prime(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError(std::string(name) + " must be positive and finite");
}

void require_plateau_epsilon(double length, double epsilon) {
    require_positive(length, "L");
    require_positive(epsilon, "epsilon");
    if (!(epsilon < length / 4.0)) throw DomainError("epsilon must satisfy epsilon < L/4");
}

std::string format_label(const char* family, std::initializer_list<std::pair<const char*, double>> params) {
    std::ostringstream os;
    os.precision(17);
    os << family << '(';
    bool first = true;
    for (const auto& [name, value] : params) {
        if (!first) os << ", ";
        os << name << '=' << value;
        first = false;
    }
    os << ')';
    return os.str();
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
    return kind == ProfileKind::condition_h ? "condition_H" : "revolution";
}

ProfileKind parse_profile_kind(std::string_view name) {
    if (name == "condition_H" || name == "condition_h") return ProfileKind::condition_h;
    if (name == "revolution") return ProfileKind::revolution;
    throw ConfigurationError("unknown profile kind '" + std::string(name) + "'");
}

WarpProfile::WarpProfile(double length, ProfileKind kind, Evaluator evaluator, std::string label,
                         std::vector<double> breakpoints)
    : length_(length),
      kind_(kind),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      label_(std::move(label)) {
    require_positive(length, "L");
    if (!*evaluator_) throw DomainError("warp profile needs an evaluator");
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double b : breakpoints) {
        if (b > 0.0 && b < length && (breakpoints_.empty() || b > breakpoints_.back()))
            breakpoints_.push_back(b);
    }
}

WarpProfile make_cylinder(double length) {
    require_positive(length, "L");
    return WarpProfile(length, ProfileKind::condition_h, [](double) { return WarpSample{1.0, 0.0}; },
                       format_label("cylinder", {{"L", length}}));
}

WarpProfile make_plateau_family(double length, double epsilon, double plateau, double end_value) {
    require_plateau_epsilon(length, epsilon);
    require_positive(plateau, "plateau");
    require_positive(end_value, "end value");
    auto eval = [=](double t) -> WarpSample {
        if (t <= epsilon || t >= length - epsilon) return {end_value, 0.0};
        if (t < 2.0 * epsilon) {
            const double x = (t - epsilon) / epsilon;
            return {end_value + (plateau - end_value) * smoothstep(x),
                    (plateau - end_value) * smoothstep_prime(x) / epsilon};
        }
        if (t <= length - 2.0 * epsilon) return {plateau, 0.0};
        const double x = (t - (length - 2.0 * epsilon)) / epsilon;
        return {plateau + (end_value - plateau) * smoothstep(x),
                (end_value - plateau) * smoothstep_prime(x) / epsilon};
    };
    return WarpProfile(length, ProfileKind::condition_h, eval,
                       format_label("plateau", {{"L", length}, {"epsilon", epsilon}, {"plateau", plateau}}),
                       {epsilon, 2.0 * epsilon, length - 2.0 * epsilon, length - epsilon});
}

WarpProfile make_revolution_plateau(double length, double epsilon, double h0) {
    require_plateau_epsilon(length, epsilon);
    require_positive(h0, "h0");
    const double top = h0 / epsilon;
    auto eval = [=](double t) -> WarpSample {
        if (t <= epsilon) return {h0, 0.0};
        if (t < 2.0 * epsilon) {
            const double x = (t - epsilon) / epsilon;
            return {h0 + (top - h0) * smoothstep(x), (top - h0) * smoothstep_prime(x) / epsilon};
        }
        if (t <= length - 2.0 * epsilon) return {top, 0.0};
        if (t < length - epsilon) {
            // Blend the plateau into the cone L - t.
            const double x = (t - (length - 2.0 * epsilon)) / epsilon;
            const double s = smoothstep(x);
            const double cone = length - t;
            return {(1.0 - s) * top + s * cone, smoothstep_prime(x) / epsilon * (cone - top) - s};
        }
        return {length - t, -1.0};
    };
    return WarpProfile(length, ProfileKind::revolution, eval,
                       format_label("revolution_plateau", {{"L", length}, {"epsilon", epsilon}, {"h0", h0}}),
                       {epsilon, 2.0 * epsilon, length - 2.0 * epsilon, length - epsilon});
}

WarpProfile make_capped_profile(double length, double h0) {
    require_positive(length, "L");
    require_positive(h0, "h0");
    const double k = h0 / length - 1.0;
    const double w = std::numbers::pi / (2.0 * length);
    auto eval = [=](double t) -> WarpSample {
        const double c = std::cos(w * t);
        const double s = length - t;
        const double factor = 1.0 + k * c * c;
        return {s * factor, -factor - s * k * w * std::sin(2.0 * w * t)};
    };
    return WarpProfile(length, ProfileKind::revolution, eval, format_label("capped", {{"L", length}, {"h0", h0}}));
}

WarpProfile make_table_profile(std::vector<double> t, std::vector<double> h, ProfileKind kind, std::string label) {
    if (t.size() != h.size()) throw DomainError("profile table needs equally many t and h samples");
    if (t.size() < 4) throw DomainError("profile table needs at least four samples");
    if (t.front() != 0.0) throw DomainError("profile table must start at t = 0");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw DomainError("profile table t must be strictly increasing");
    for (double v : h)
        if (!std::isfinite(v)) throw DomainError("profile table h must be finite");
    const double length = t.back();
    std::vector<double> knots(t.begin() + 1, t.end() - 1);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    // A revolution table must close with slope -1 at the pole.
    const double right_slope = kind == ProfileKind::revolution ? -1.0 : nan;
    boost::math::interpolators::pchip<std::vector<double>> spline(std::move(t), std::move(h), nan, right_slope);
    auto eval = [spline, length](double x) -> WarpSample {
        x = std::clamp(x, 0.0, length);
        return {spline(x), spline.prime(x)};
    };
    return WarpProfile(length, kind, eval, std::move(label), std::move(knots));
}

ValidationReport validate(const WarpProfile& profile, const ValidationOptions& options) {
    const double length = profile.length();
    const auto fail = [](double t, std::string message) {
        return ValidationReport{false, t, std::move(message)};
    };
    const auto where = [](double t) {
        std::ostringstream os;
        os.precision(17);
        os << " at t = " << t;
        return os.str();
    };

    const WarpSample left = profile(0.0);
    const WarpSample right = profile(length);
    if (profile.kind() == ProfileKind::condition_h) {
        if (std::abs(left.h - 1.0) > options.endpoint_tolerance) return fail(0.0, "h(0) != 1" + where(0.0));
        if (std::abs(right.h - 1.0) > options.endpoint_tolerance) return fail(length, "h(L) != 1" + where(length));
    } else {
        if (std::abs(right.h) > options.endpoint_tolerance) return fail(length, "h(L) != 0" + where(length));
        if (std::abs(right.dh + 1.0) > options.slope_tolerance) return fail(length, "h'(L) != -1" + where(length));
    }

    const std::size_t n = std::max<std::size_t>(options.samples, 2);
    const auto breaks = profile.breakpoints();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = length * static_cast<double>(i) / static_cast<double>(n - 1);
        const WarpSample s = profile(t);
        if (!std::isfinite(s.h) || !std::isfinite(s.dh)) return fail(t, "non-finite value" + where(t));
        const bool pole = profile.kind() == ProfileKind::revolution && i == n - 1;
        if (!pole && !(s.h > 0.0)) return fail(t, "h is not positive" + where(t));

        // Fourth-order central difference of h against the carried h', away from
        // endpoints and breakpoints where h is only piecewise smooth.
        double distance = std::min(t, length - t);
        for (double b : breaks) distance = std::min(distance, std::abs(t - b));
        if (distance < 1e-6 * length) continue;
        const double eta = std::min(1e-5 * length, distance / 4.0);
        const double d = (8.0 * (profile.h(t + eta) - profile.h(t - eta)) -
                          (profile.h(t + 2.0 * eta) - profile.h(t - 2.0 * eta))) /
                         (12.0 * eta);
        const double scale = std::abs(s.dh) + std::abs(s.h) / length;
        if (std::abs(d - s.dh) > options.derivative_tolerance * scale)
            return fail(t, "h' inconsistent with finite differences of h" + where(t));
    }
    return {};
}

void require_valid(const WarpProfile& profile) {
    const ValidationReport report = validate(profile);
    if (!report.pass) throw DomainError("invalid warp profile " + profile.label() + ": " + report.message);
}

Grid make_uniform_grid(double length, std::size_t n, std::span<const double> breakpoints) {
    require_positive(length, "L");
    if (n == 0) throw DomainError("grid needs at least one element");
    std::vector<double> cuts{0.0};
    for (double b : breakpoints)
        if (b > 0.0 && b < length) cuts.push_back(b);
    cuts.push_back(length);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Element counts proportional to segment length (largest remainder), at least one each.
    const std::size_t segments = cuts.size() - 1;
    std::vector<std::size_t> counts(segments);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t used = 0;
    for (std::size_t k = 0; k < segments; ++k) {
        const double exact = static_cast<double>(n) * (cuts[k + 1] - cuts[k]) / length;
        counts[k] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(exact)));
        used += counts[k];
        remainders.emplace_back(exact - std::floor(exact), k);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; used < n && r < remainders.size(); ++r, ++used) ++counts[remainders[r].second];

    Grid grid;
    grid.nodes.push_back(0.0);
    for (std::size_t k = 0; k < segments; ++k) {
        const double a = cuts[k];
        const double b = cuts[k + 1];
        for (std::size_t i = 1; i < counts[k]; ++i)
            grid.nodes.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(counts[k]));
        grid.nodes.push_back(b);
    }
    return grid;
}

Grid make_grid(const WarpProfile& profile, std::size_t n, const GridOptions& options) {
    if (n < 8) throw DomainError("make_grid needs n >= 8");
    const double length = profile.length();
    std::vector<double> breaks(profile.breakpoints().begin(), profile.breakpoints().end());
    breaks.insert(breaks.end(), options.extra_breakpoints.begin(), options.extra_breakpoints.end());

    if (profile.kind() == ProfileKind::condition_h) return make_uniform_grid(length, n, breaks);

    if (!(options.grading_ratio > 0.0 && options.grading_ratio < 1.0))
        throw DomainError("grading ratio must lie in (0, 1)");
    if (!(options.min_element_fraction > 0.0)) throw DomainError("minimum element fraction must be positive");

    // Geometric layer toward the pole, smallest element first.
    const double uniform_size = length / static_cast<double>(n);
    std::vector<double> layer;  // distances from t = L
    double size = options.min_element_fraction * length;
    double depth = 0.0;
    while (size < uniform_size && depth + size < 0.5 * length) {
        depth += size;
        layer.push_back(depth);
        size /= options.grading_ratio;
    }
    const double start = length - depth;

    std::vector<double> inner_breaks;
    std::vector<double> layer_breaks;
    for (double b : breaks) {
        if (b <= 0.0 || b >= length) continue;
        (b < start ? inner_breaks : layer_breaks).push_back(b);
    }
    const auto inner_n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(n) * start / length)));
    Grid grid = make_uniform_grid(start, inner_n, inner_breaks);
    grid.grading = GridGrading::graded_right;

    std::vector<double> tail;
    for (auto it = layer.rbegin(); it != layer.rend(); ++it) tail.push_back(length - *it);
    tail.push_back(length);
    if (!tail.empty() && tail.front() == start) tail.erase(tail.begin());
    // Breakpoints inside the layer replace graded nodes that crowd them.
    for (double b : layer_breaks) {
        auto pos = std::lower_bound(tail.begin(), tail.end(), b);
        const double local = pos != tail.end() ? (pos == tail.begin() ? *pos - start : *pos - *(pos - 1))
                                               : uniform_size;
        std::erase_if(tail, [&](double x) { return x != length && std::abs(x - b) < 0.3 * local; });
        tail.insert(std::lower_bound(tail.begin(), tail.end(), b), b);
    }
    grid.nodes.insert(grid.nodes.end(), tail.begin(), tail.end());
    return grid;
}

}  // namespace steklov
