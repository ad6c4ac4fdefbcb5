#pragma once

#include <cstddef>
#include <optional>

#include "steklov/mode_solver.hpp"

namespace steklov {

struct ShootingOptions {
    double bracket_low = 1e-9;
    // Defaults to 2 L lambda (or 4/L when lambda = 0).
    std::optional<double> bracket_high;
    int max_widenings = 6;
    std::size_t scan_points = 64;
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-15;
    double root_tolerance = 1e-12;
    // Offset from the pole, as a fraction of L, where the Frobenius seed is placed.
    double frobenius_offset = 1e-6;
};

// Boundary mismatch F(sigma) = p(L) - sigma wL a(L) of the solution of
// a' = p / h^2, p' = lambda a with a(0) = 1, p(0) = -sigma w0.
double shooting_mismatch(const ModeProblem& problem, double sigma, const ShootingOptions& options = {});

// Two-boundary shooting: bracket both roots of F by scanning, refine with TOMS 748.
// Throws RootNotFound when two roots cannot be bracketed after max_widenings.
ModeSolution solve_mode_shooting(const ModeProblem& problem, const ShootingOptions& options = {});

// Revolution shooting: integrate backward from t = L - delta with the regular
// Frobenius seed a = (L - t)^alpha, alpha = (-1 + sqrt(1 + 4 lambda)) / 2, and
// read sigma = -p(0) / (w0 a(0)).
ModeSolution solve_mode_revolution_shooting(const ModeProblem& problem,
                                            const ShootingOptions& options = {});

// Regular Frobenius exponent at the pole.
double frobenius_exponent(double lambda);

}  // namespace steklov
