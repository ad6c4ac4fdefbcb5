#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

int branch_order(Branch b) {
    switch (b) {
    case Branch::first: return 0;
    case Branch::second: return 1;
    case Branch::revolution: return 0;
    }
    return 0;
}

}  // namespace

std::string_view to_string(Branch branch) {
    switch (branch) {
    case Branch::first: return "first";
    case Branch::second: return "second";
    case Branch::revolution: return "revolution";
    }
    return "first";
}

SteklovSpectrum assemble(std::span<const IndexedModeSolution> solutions, const CrossSectionSpectrum& cross_section,
                         std::size_t count) {
    if (solutions.empty()) throw DomainError("assemble needs at least one mode solution");
    if (count == 0) throw DomainError("assemble needs count >= 1");

    std::vector<const IndexedModeSolution*> ordered;
    for (const auto& s : solutions) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->mode < b->mode; });
    for (std::size_t j = 0; j < ordered.size(); ++j)
        if (ordered[j]->mode != j) throw DomainError("mode solutions must cover j = 0 .. j_max exactly once");
    const std::size_t j_max = ordered.size() - 1;
    if (j_max >= cross_section.size()) throw DomainError("more mode solutions than cross-section eigenvalues");

    SteklovSpectrum spectrum;
    spectrum.j_max = j_max;
    for (const auto* s : ordered) {
        const int multiplicity = cross_section[s->mode].multiplicity;
        if (s->solution.sigma_2) {
            spectrum.entries.push_back({s->solution.sigma_1, s->mode, Branch::first, multiplicity});
            spectrum.entries.push_back({*s->solution.sigma_2, s->mode, Branch::second, multiplicity});
        } else {
            spectrum.entries.push_back({s->solution.sigma_1, s->mode, Branch::revolution, multiplicity});
        }
    }
    std::stable_sort(spectrum.entries.begin(), spectrum.entries.end(), [](const auto& a, const auto& b) {
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        if (a.mode != b.mode) return a.mode < b.mode;
        return branch_order(a.branch) < branch_order(b.branch);
    });

    for (const auto& e : spectrum.entries) {
        for (int m = 0; m < e.multiplicity && spectrum.counted.size() < count; ++m) spectrum.counted.push_back(e.sigma);
        if (spectrum.counted.size() == count) break;
    }

    // Unsolved modes have sigma_{j,1} >= guard, and a tie sorts after by mode index.
    // Once the cross-section is exhausted there is nothing left to certify against.
    const double guard = ordered.back()->solution.sigma_1;
    const bool exhausted = j_max + 1 == cross_section.size();
    if (spectrum.counted.size() < count || (!exhausted && !(guard >= spectrum.counted.back()))) {
        std::ostringstream os;
        os.precision(17);
        os << "modes 0.." << j_max << " do not certify " << count << " eigenvalues (sigma_{" << j_max
           << ",1} = " << guard << "); need j_max > " << j_max;
        throw InsufficientModes(os.str(), j_max + 1);
    }
    return spectrum;
}

std::vector<DistinctEigenvalue> distinct_spectrum(const SteklovSpectrum& spectrum) {
    std::vector<DistinctEigenvalue> out;
    for (const auto& e : spectrum.entries) {
        if (!out.empty()) {
            const double a = out.back().sigma;
            const double diff = std::abs(e.sigma - a);
            if (diff <= 1e-12 || diff <= 1e-9 * std::max(std::abs(a), std::abs(e.sigma))) {
                out.back().multiplicity += e.multiplicity;
                continue;
            }
        }
        out.push_back({e.sigma, e.multiplicity});
    }
    return out;
}

std::vector<double> gaps(const SteklovSpectrum& spectrum, bool distinct) {
    std::vector<double> values;
    if (distinct) {
        for (const auto& d : distinct_spectrum(spectrum)) values.push_back(d.sigma);
    } else {
        values = spectrum.counted;
    }
    if (values.size() < 2) throw DomainError("gaps need at least two eigenvalues");
    std::vector<double> out;
    for (std::size_t i = 1; i < values.size(); ++i) out.push_back(values[i] - values[i - 1]);
    return out;
}

ModeSolution solve_mode(const WarpProfile& profile, double lambda, const SolveOptions& options) {
    ModeProblem problem = make_mode_problem(profile, lambda, make_grid(profile, options.mesh, options.grid));
    if (options.engine == Engine::fem_schur) return solve_mode(problem);
    return profile.kind() == ProfileKind::revolution ? solve_mode_revolution_shooting(problem, options.shooting)
                                                     : solve_mode_shooting(problem, options.shooting);
}

ComputedSpectrum compute_spectrum(const WarpProfile& profile, const CrossSectionSpectrum& cross_section,
                                  std::size_t count, const SolveOptions& options) {
    ComputedSpectrum out;
    for (std::size_t j = 0; j < cross_section.size(); ++j) {
        out.modes.push_back({j, solve_mode(profile, cross_section[j].lambda, options)});
        if (j == 0) continue;
        try {
            out.spectrum = assemble(out.modes, cross_section, count);
            return out;
        } catch (const InsufficientModes&) {
        }
    }
    throw InsufficientModes("cross-section with " + std::to_string(cross_section.size()) +
                                " eigenvalues is too short to certify " + std::to_string(count) +
                                " Steklov eigenvalues",
                            cross_section.size());
}

}  // namespace steklov
