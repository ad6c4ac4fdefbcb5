#include "steklov/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

double SymmetricTridiagonal::operator()(std::size_t i, std::size_t k) const {
    if (i == k) return diagonal.at(i);
    if (i + 1 == k) return offdiagonal.at(i);
    if (k + 1 == i) return offdiagonal.at(k);
    return 0.0;
}

std::vector<double> SymmetricTridiagonal::multiply(std::span<const double> x) const {
    const std::size_t n = size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diagonal[i] * x[i];
        if (i > 0) s += offdiagonal[i - 1] * x[i - 1];
        if (i + 1 < n) s += offdiagonal[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

SymmetricTridiagonal SymmetricTridiagonal::block(std::size_t first, std::size_t count) const {
    SymmetricTridiagonal b(count);
    for (std::size_t i = 0; i < count; ++i) b.diagonal[i] = diagonal.at(first + i);
    for (std::size_t i = 0; i + 1 < count; ++i) b.offdiagonal[i] = offdiagonal.at(first + i);
    return b;
}

ChainCondensation condense_chain(std::span<const double> couplings, std::span<const double> excess) {
    const std::size_t n = excess.size();
    if (n < 2) throw NumericalError("chain condensation needs at least two nodes");
    if (couplings.size() != n - 1) throw NumericalError("chain needs one coupling per pair of neighbours");

    std::vector<double> r(excess.begin(), excess.end());
    std::vector<double> pivot(n, 0.0);
    std::vector<double> to_first(n, 0.0);
    double w = couplings[0];
    double r0 = r[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double p = w + couplings[i] + r[i];
        if (!(p > 0.0)) throw NumericalError("chain pivot " + std::to_string(i) + " is not positive");
        pivot[i] = p;
        to_first[i] = w;
        r0 += w * r[i] / p;
        r[i + 1] += couplings[i] * r[i] / p;
        w = w * couplings[i] / p;
    }

    ChainCondensation out;
    out.coupling = w;
    out.excess_first = r0;
    out.excess_last = r[n - 1];
    auto back_substitute = [&](double first, double last) {
        std::vector<double> x(n, 0.0);
        x.front() = first;
        x.back() = last;
        for (std::size_t i = n - 2; i >= 1; --i) x[i] = (to_first[i] * first + couplings[i] * x[i + 1]) / pivot[i];
        return x;
    };
    out.lift_first = back_substitute(1.0, 0.0);
    out.lift_last = back_substitute(0.0, 1.0);
    return out;
}

}  // namespace steklov
