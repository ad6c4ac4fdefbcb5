#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "steklov/cross_section.hpp"
#include "steklov/mode_solver.hpp"
#include "steklov/shooting.hpp"

namespace steklov {

enum class Branch { first, second, revolution };

std::string_view to_string(Branch branch);

struct SpectrumEntry {
    double sigma = 0.0;
    std::size_t mode = 0;
    Branch branch = Branch::first;
    int multiplicity = 1;
};

// Global Steklov spectrum: the union over cross-section modes of the per-mode
// eigenvalues, sorted, each carrying the multiplicity of its Laplace eigenvalue.
struct SteklovSpectrum {
    std::vector<SpectrumEntry> entries;
    std::vector<double> counted;  // multiplicity-expanded, truncated to the requested count
    std::size_t j_max = 0;
};

struct IndexedModeSolution {
    std::size_t mode = 0;
    ModeSolution solution;
};

// Merges per-mode solutions for modes 0..j_max. Ties are broken by ascending
// mode, then first before second. Unless every cross-section mode is solved,
// the last one must satisfy sigma_{j_max,1} >= counted[count - 1]; since
// sigma_{j,1} is nondecreasing in lambda_j this certifies that no unsolved mode
// can enter the first `count` values. Throws InsufficientModes otherwise.
SteklovSpectrum assemble(std::span<const IndexedModeSolution> solutions,
                         const CrossSectionSpectrum& cross_section, std::size_t count);

struct DistinctEigenvalue {
    double sigma = 0.0;
    int multiplicity = 1;
};

// Merges entries whose values agree to relative 1e-9 (absolute 1e-12 near zero).
std::vector<DistinctEigenvalue> distinct_spectrum(const SteklovSpectrum& spectrum);

// Consecutive differences of the distinct values (distinct = true) or of the
// counted list. Throws DomainError with fewer than two values.
std::vector<double> gaps(const SteklovSpectrum& spectrum, bool distinct);

struct SolveOptions {
    std::size_t mesh = 4096;
    Engine engine = Engine::fem_schur;
    GridOptions grid;
    ShootingOptions shooting;
};

// Solves one mode with the selected engine on make_grid(profile, options.mesh).
ModeSolution solve_mode(const WarpProfile& profile, double lambda, const SolveOptions& options);

struct ComputedSpectrum {
    SteklovSpectrum spectrum;
    std::vector<IndexedModeSolution> modes;
};

// Solves modes 0, 1, ... of the cross-section until the assembly guard passes
// for `count` values. Throws InsufficientModes when the cross-section runs out.
ComputedSpectrum compute_spectrum(const WarpProfile& profile, const CrossSectionSpectrum& cross_section,
                                  std::size_t count, const SolveOptions& options = {});

}  // namespace steklov
