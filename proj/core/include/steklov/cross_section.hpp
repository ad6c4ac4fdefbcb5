#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

enum class Normalization { unit_radius, unit_area, custom };

Normalization parse_normalization(std::string_view name);
std::string_view to_string(Normalization n);

struct LaplaceEigenvalue {
    double lambda = 0.0;
    int multiplicity = 1;
};

// Laplace spectrum of the closed cross-section surface: distinct eigenvalues
// in strictly increasing order, each with its multiplicity. This is the only
// information about the cross-section that the mode reduction consumes.
class CrossSectionSpectrum {
public:
    CrossSectionSpectrum(std::vector<LaplaceEigenvalue> entries, Normalization normalization,
                         std::string description);

    std::span<const LaplaceEigenvalue> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const LaplaceEigenvalue& operator[](std::size_t j) const { return entries_.at(j); }

    Normalization normalization() const noexcept { return normalization_; }
    const std::string& description() const noexcept { return description_; }

    // Total number of eigenvalues counted with multiplicity.
    std::size_t counted_size() const noexcept;

    // Index in the multiplicity-expanded list of the first copy of entry j.
    std::size_t first_counted_index(std::size_t j) const;

private:
    std::vector<LaplaceEigenvalue> entries_;
    Normalization normalization_;
    std::string description_;
};

// Round sphere S^2: lambda_(j) = j(j+1) on the unit sphere, with multiplicity 2j+1.
// Under unit_area the sphere has radius (4 pi)^{-1/2}, so every eigenvalue is
// scaled by 4 pi.
CrossSectionSpectrum sphere_spectrum(std::size_t j_max, Normalization normalization);

// Arbitrary user-supplied spectrum. Entries are sorted; eigenvalues equal to
// within 1e-12 are merged and their multiplicities summed.
CrossSectionSpectrum custom_spectrum(std::vector<LaplaceEigenvalue> values);

inline constexpr double kMergeTolerance = 1e-12;

}  // namespace steklov
