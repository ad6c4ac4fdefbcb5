#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace steklov::testing {

std::pair<double, double> cylinder_pair(double length, double lambda) {
    if (lambda == 0.0) return {0.0, 2.0 / length};
    const double r = std::sqrt(lambda);
    const double x = r * length / 2.0;
    return {r * std::tanh(x), r / std::tanh(x)};
}

std::vector<OracleValue> cylinder_union(double length, const CrossSectionSpectrum& cs, std::size_t count) {
    std::vector<OracleValue> all;
    for (std::size_t j = 0; j < cs.size(); ++j) {
        auto [s1, s2] = cylinder_pair(length, cs[j].lambda);
        for (int m = 0; m < cs[j].multiplicity; ++m) {
            all.push_back({s1, j, 0});
            all.push_back({s2, j, 1});
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const OracleValue& a, const OracleValue& b) {
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        if (a.mode != b.mode) return a.mode < b.mode;
        return a.branch < b.branch;
    });
    if (all.size() > count) all.resize(count);
    return all;
}

double inverse_square_integral(const WarpProfile& profile) {
    std::vector<double> cuts{0.0};
    for (double b : profile.breakpoints()) cuts.push_back(b);
    cuts.push_back(profile.length());
    double total = 0.0;
    auto f = [&](double t) {
        const double h = profile.h(t);
        return 1.0 / (h * h);
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-14);
    return total;
}

std::vector<double> sphere_zonal_eigenvalues(double area, std::size_t cells, std::size_t k) {
    const std::size_t n = cells;
    const double dx = 2.0 / static_cast<double>(n);
    const double scale = 4.0 * std::numbers::pi / area;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    // Cell-centred unknowns; flux (1 - x^2) at the interior faces vanishes at the poles.
    for (std::size_t f = 1; f < n; ++f) {
        const double x = -1.0 + static_cast<double>(f) * dx;
        const double c = (1.0 - x * x) / (dx * dx);
        const auto i = static_cast<Eigen::Index>(f - 1);
        const auto j = static_cast<Eigen::Index>(f);
        a(i, i) += c;
        a(j, j) += c;
        a(i, j) -= c;
        a(j, i) -= c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a * scale, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (std::size_t i = 0; i < std::min(k, n); ++i) out.push_back(solver.eigenvalues()(static_cast<Eigen::Index>(i)));
    return out;
}

std::vector<double> tent_function(const std::vector<double>& nodes, double epsilon) {
    std::vector<double> a;
    a.reserve(nodes.size());
    for (double t : nodes) {
        if (t <= 2.0 * epsilon)
            a.push_back(1.0);
        else if (t <= 3.0 * epsilon)
            a.push_back(3.0 - t / epsilon);
        else
            a.push_back(0.0);
    }
    return a;
}

}  // namespace steklov::testing
