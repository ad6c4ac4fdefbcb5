#include "steklov/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

Normalization parse_normalization(std::string_view name) {
    if (name == "unit_radius") return Normalization::unit_radius;
    if (name == "unit_area") return Normalization::unit_area;
    if (name == "custom") return Normalization::custom;
    throw ConfigurationError("unknown normalization '" + std::string(name) +
                             "' (expected unit_radius, unit_area or custom)");
}

std::string_view to_string(Normalization n) {
    switch (n) {
    case Normalization::unit_radius: return "unit_radius";
    case Normalization::unit_area: return "unit_area";
    case Normalization::custom: return "custom";
    }
    return "custom";
}

CrossSectionSpectrum::CrossSectionSpectrum(std::vector<LaplaceEigenvalue> entries,
                                           Normalization normalization, std::string description)
    : entries_(std::move(entries)), normalization_(normalization), description_(std::move(description)) {
    if (entries_.empty()) throw DomainError("cross-section spectrum is empty");
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        const auto& e = entries_[j];
        if (!(e.lambda >= 0.0) || !std::isfinite(e.lambda))
            throw DomainError("Laplace eigenvalue must be finite and nonnegative");
        if (e.multiplicity < 1) throw DomainError("Laplace multiplicity must be positive");
        if (j > 0 && !(e.lambda > entries_[j - 1].lambda))
            throw DomainError("cross-section eigenvalues must be strictly increasing");
    }
    if (entries_.front().lambda != 0.0 || entries_.front().multiplicity != 1)
        throw DomainError("a connected cross-section has first eigenvalue 0 with multiplicity 1");
}

std::size_t CrossSectionSpectrum::counted_size() const noexcept {
    std::size_t total = 0;
    for (const auto& e : entries_) total += static_cast<std::size_t>(e.multiplicity);
    return total;
}

std::size_t CrossSectionSpectrum::first_counted_index(std::size_t j) const {
    if (j >= entries_.size()) throw DomainError("cross-section mode index out of range");
    std::size_t index = 0;
    for (std::size_t i = 0; i < j; ++i) index += static_cast<std::size_t>(entries_[i].multiplicity);
    return index;
}

CrossSectionSpectrum sphere_spectrum(std::size_t j_max, Normalization normalization) {
    if (j_max < 1) throw DomainError("sphere_spectrum needs j_max >= 1");
    double scale = 1.0;
    switch (normalization) {
    case Normalization::unit_radius: break;
    case Normalization::unit_area: scale = 4.0 * std::numbers::pi; break;
    case Normalization::custom:
        throw ConfigurationError("sphere spectrum supports unit_radius or unit_area normalization");
    }
    std::vector<LaplaceEigenvalue> entries;
    entries.reserve(j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        const double jj = static_cast<double>(j);
        entries.push_back({scale * jj * (jj + 1.0), static_cast<int>(2 * j + 1)});
    }
    std::ostringstream description;
    description << "sphere S^2, " << to_string(normalization) << ", j <= " << j_max;
    return CrossSectionSpectrum(std::move(entries), normalization, description.str());
}

CrossSectionSpectrum custom_spectrum(std::vector<LaplaceEigenvalue> values) {
    if (values.empty()) throw DomainError("custom spectrum needs at least one eigenvalue");
    for (const auto& v : values) {
        if (!(v.lambda >= 0.0) || !std::isfinite(v.lambda))
            throw DomainError("Laplace eigenvalue must be finite and nonnegative");
        if (v.multiplicity < 1) throw DomainError("Laplace multiplicity must be positive");
    }
    std::stable_sort(values.begin(), values.end(),
                     [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
    std::vector<LaplaceEigenvalue> merged;
    for (const auto& v : values) {
        if (!merged.empty() && std::abs(v.lambda - merged.back().lambda) <= kMergeTolerance)
            merged.back().multiplicity += v.multiplicity;
        else
            merged.push_back(v);
    }
    return CrossSectionSpectrum(std::move(merged), Normalization::custom, "custom");
}

}  // namespace steklov
