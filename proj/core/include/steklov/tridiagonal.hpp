#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace steklov {

// Symmetric tridiagonal matrix stored by its diagonal and first off-diagonal.
struct SymmetricTridiagonal {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal;  // offdiagonal[i] couples rows i and i + 1

    SymmetricTridiagonal() = default;
    explicit SymmetricTridiagonal(std::size_t n) : diagonal(n, 0.0), offdiagonal(n ? n - 1 : 0, 0.0) {}

    std::size_t size() const noexcept { return diagonal.size(); }

    double operator()(std::size_t i, std::size_t k) const;

    std::vector<double> multiply(std::span<const double> x) const;

    // Principal submatrix on rows/columns [first, first + count).
    SymmetricTridiagonal block(std::size_t first, std::size_t count) const;
};

// Chain matrix written as couplings c[i] between nodes i and i + 1 and a row
// excess r[i], so that diagonal[i] = c[i - 1] + c[i] + r[i] and
// offdiagonal[i] = -c[i]. Eliminating the interior nodes in this form keeps
// every pivot a sum of the couplings and excess, with no subtractive
// cancellation when the excess is small against the couplings.
struct ChainCondensation {
    double coupling = 0.0;      // effective coupling between the two end nodes
    double excess_first = 0.0;
    double excess_last = 0.0;
    // Interior solution for end values (1, 0) and (0, 1).
    std::vector<double> lift_first;
    std::vector<double> lift_last;
};

// Needs at least two nodes. Throws NumericalError on a non-positive pivot.
ChainCondensation condense_chain(std::span<const double> couplings, std::span<const double> excess);

}  // namespace steklov
