#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "steklov/cross_section.hpp"
#include "steklov/errors.hpp"
#include "support/oracles.hpp"

using namespace steklov;

TEST(CrossSection, SphereUnitRadiusValues) {
    auto s = sphere_spectrum(4, Normalization::unit_radius);
    ASSERT_EQ(s.size(), 5u);
    for (std::size_t j = 0; j <= 4; ++j) {
        EXPECT_DOUBLE_EQ(s[j].lambda, static_cast<double>(j * (j + 1)));
        EXPECT_EQ(s[j].multiplicity, static_cast<int>(2 * j + 1));
    }
    EXPECT_EQ(s.counted_size(), 25u);
}

TEST(CrossSection, SphereUnitAreaScaling) {
    auto s = sphere_spectrum(2, Normalization::unit_area);
    EXPECT_NEAR(s[1].lambda, 8.0 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(s[2].lambda, 24.0 * std::numbers::pi, 1e-12);
}

TEST(CrossSection, UnitAreaMatchesFiniteVolumeLaplacian) {
    auto s = sphere_spectrum(3, Normalization::unit_area);
    auto fv = steklov::testing::sphere_zonal_eigenvalues(1.0, 2000, 4);
    EXPECT_NEAR(fv[0], 0.0, 1e-8);
    for (std::size_t j = 1; j <= 3; ++j) EXPECT_NEAR(fv[j] / s[j].lambda, 1.0, 1e-4) << j;
}

TEST(CrossSection, CustomNormalizationRejectedForSphere) {
    EXPECT_THROW(sphere_spectrum(2, Normalization::custom), ConfigurationError);
    EXPECT_THROW(sphere_spectrum(0, Normalization::unit_radius), DomainError);
}

TEST(CrossSection, FirstCountedIndex) {
    auto s = sphere_spectrum(3, Normalization::unit_radius);
    EXPECT_EQ(s.first_counted_index(0), 0u);
    EXPECT_EQ(s.first_counted_index(1), 1u);
    EXPECT_EQ(s.first_counted_index(2), 4u);
    EXPECT_EQ(s.first_counted_index(3), 9u);
    EXPECT_THROW(s.first_counted_index(4), DomainError);
}

TEST(CrossSection, CustomSortsAndMerges) {
    auto s = custom_spectrum({{2.0, 3}, {0.0, 1}, {2.0 + 1e-13, 1}, {5.0, 2}});
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[1].multiplicity, 4);
    EXPECT_DOUBLE_EQ(s[2].lambda, 5.0);
    EXPECT_EQ(s.normalization(), Normalization::custom);
}

TEST(CrossSection, CustomRejectsBadInput) {
    EXPECT_THROW(custom_spectrum({}), DomainError);
    EXPECT_THROW(custom_spectrum({{0.0, 1}, {-1.0, 1}}), DomainError);
    EXPECT_THROW(custom_spectrum({{0.0, 1}, {1.0, 0}}), DomainError);
    EXPECT_THROW(custom_spectrum({{1.0, 1}}), DomainError);
    EXPECT_THROW(custom_spectrum({{0.0, 2}, {1.0, 1}}), DomainError);
}

TEST(CrossSection, ConstructorInvariants) {
    EXPECT_THROW(CrossSectionSpectrum({{0.0, 1}, {2.0, 1}, {1.0, 1}}, Normalization::custom, "x"), DomainError);
    EXPECT_THROW(CrossSectionSpectrum({{0.0, 1}, {NAN, 1}}, Normalization::custom, "x"), DomainError);
    EXPECT_NO_THROW(CrossSectionSpectrum({{0.0, 1}, {1.0, 2}}, Normalization::custom, "x"));
}

TEST(CrossSection, NormalizationNames) {
    for (auto n : {Normalization::unit_radius, Normalization::unit_area, Normalization::custom})
        EXPECT_EQ(parse_normalization(to_string(n)), n);
    EXPECT_THROW(parse_normalization("radius"), ConfigurationError);
}
