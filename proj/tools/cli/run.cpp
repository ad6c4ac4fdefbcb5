#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/cli.hpp"
#include "steklov/errors.hpp"

namespace steklov::cli {

using nlohmann::json;

namespace {

double max_deviation(const std::vector<double>& a, const std::vector<double>& b, bool relative) {
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        double d = std::abs(a[i] - b[i]);
        if (relative) d /= std::max(std::abs(a[i]), 1.0e-9);
        worst = std::max(worst, d);
    }
    return worst;
}

SpectrumResult run_spectrum(const RunConfig& config) {
    WarpProfile profile = config.profile->build();
    CrossSectionSpectrum cs = config.cross_section->build();

    SolveOptions fem;
    fem.mesh = config.mesh;
    fem.engine = Engine::fem_schur;
    SolveOptions shoot = fem;
    shoot.engine = Engine::shooting;

    auto counted = [&](const SolveOptions& o) { return compute_spectrum(profile, cs, config.count, o).spectrum; };

    SpectrumResult result;
    if (config.engine == EngineChoice::shooting) {
        result.spectrum = counted(shoot);
        SolveOptions tight = shoot;
        tight.shooting.relative_tolerance *= 1e-2;
        tight.shooting.absolute_tolerance *= 1e-2;
        result.discretization_error = max_deviation(result.spectrum.counted, counted(tight).counted, false);
        result.engine = "shooting";
        return result;
    }

    result.spectrum = counted(fem);
    SolveOptions fine = fem;
    fine.mesh = 2 * config.mesh;
    result.discretization_error =
        4.0 / 3.0 * max_deviation(result.spectrum.counted, counted(fine).counted, false);
    result.engine = "fem";
    if (config.engine == EngineChoice::both) {
        result.alternate = counted(shoot).counted;
        result.engine_disagreement = max_deviation(result.spectrum.counted, *result.alternate, true);
        result.engine = "both";
    }
    return result;
}

LabOptions lab_options(const RunConfig& config) {
    LabOptions options;
    options.mesh = config.mesh;
    return options;
}

std::vector<double> epsilons(const json& p) { return p.at("epsilons").get<std::vector<double>>(); }

CrossSectionSpectrum lab_cross_section(const RunConfig& config, std::size_t entries) {
    if (config.cross_section) return config.cross_section->build();
    return sphere_spectrum(entries, Normalization::unit_radius);
}

struct TheoremOutcome {
    std::optional<BoundReport> bound;
    std::optional<SweepReport> sweep;
    bool pass() const { return bound ? bound->pass : sweep->pass; }
};

TheoremOutcome run_theorem(const RunConfig& config) {
    const json& p = config.experiment_parameters;
    LabOptions options = lab_options(config);
    TheoremOutcome out;
    switch (*config.experiment) {
        case Statement::upper_bound: {
            auto j_max = p.at("j_max").get<std::size_t>();
            out.bound = check_upper_bound(config.profile->build(), lab_cross_section(config, j_max), j_max, options);
            break;
        }
        case Statement::supremum: {
            auto j_max = p.at("j_max").get<std::size_t>();
            auto eps = epsilons(p);
            out.sweep = supremum_sweep(p.at("L").get<double>(), lab_cross_section(config, j_max + 1), j_max, eps,
                                       options);
            break;
        }
        case Statement::collapse: {
            auto eps = epsilons(p);
            out.sweep = collapse_sweep(p.at("L").get<double>(), p.at("lambda").get<double>(), eps, options);
            break;
        }
        case Statement::stability:
            out.bound = stability_check(p.at("L1").get<double>(), p.at("L2").get<double>(), p.at("c").get<double>(),
                                        p.at("lambda").get<double>(), config.profile->build(), options);
            break;
        case Statement::revolution_bound:
            out.bound = revolution_bound_check(config.profile->build(), p.at("j_max").get<std::size_t>(), options);
            break;
        case Statement::revolution_gap:
            if (p.contains("epsilons")) {
                auto eps = epsilons(p);
                out.sweep = revolution_sweep(p.at("L").get<double>(), p.at("h0").get<double>(),
                                             p.at("j_max").get<std::size_t>(), eps, options);
            } else {
                out.bound = revolution_gap_check(config.profile->build(), p.at("j_max").get<std::size_t>(), options);
            }
            break;
    }
    return out;
}

// Writes to the configured file, or to `fallback` when no output path is set.
template <class Writer>
void emit(const RunConfig& config, std::ostream& fallback, Writer&& write) {
    if (!config.output) {
        write(fallback);
        return;
    }
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open output file '" + config.output->string() + "'");
    write(file);
    file.flush();
    if (!file) throw std::ios_base::failure("failed writing output file '" + config.output->string() + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
    if (config.task == Task::spectrum) {
        SpectrumResult result = run_spectrum(config);
        emit(config, out, [&](std::ostream& os) { write_spectrum(config, result, os); });
        return success;
    }

    TheoremOutcome outcome;
    try {
        outcome = run_theorem(config);
    } catch (const PreconditionError& e) {
        log << "precondition failed: " << e.what() << '\n';
        emit(config, out, [&](std::ostream& os) { write_precondition_failure(config, e.what(), os); });
        return check_failed;
    }

    if (outcome.bound) {
        emit(config, out, [&](std::ostream& os) { write_bound_report(config, *outcome.bound, os); });
        for (const auto& f : outcome.bound->failures) log << "check failed: " << f << '\n';
    } else {
        emit(config, out, [&](std::ostream& os) { write_sweep_report(config, *outcome.sweep, os); });
        if (config.plotdata) emit_sweep_plotdata(*outcome.sweep, *config.plotdata);
        for (const auto& f : outcome.sweep->failures) log << "check failed: " << f << '\n';
    }
    return outcome.pass() ? success : check_failed;
}

int run_from_file(const std::filesystem::path& path, const Overrides& overrides, std::ostream& out,
                  std::ostream& log) {
    RunConfig config;
    try {
        config = load_config(path, overrides);
    } catch (const Error& e) {
        log << "configuration error: " << e.what() << '\n';
        return configuration_error;
    }
    try {
        return run(config, out, log);
    } catch (const ConfigurationError& e) {
        log << "configuration error: " << e.what() << '\n';
        return configuration_error;
    } catch (const DomainError& e) {
        log << "configuration error: " << e.what() << '\n';
        return configuration_error;
    } catch (const InsufficientModes& e) {
        log << "numerical error: " << e.what() << " (need j_max >= " << e.required_j_max() << ")\n";
        return numerical_error;
    } catch (const Error& e) {
        log << "numerical error: " << e.what() << '\n';
        return numerical_error;
    } catch (const std::ios_base::failure& e) {
        log << "i/o error: " << e.what() << '\n';
        return numerical_error;
    }
}

}  // namespace steklov::cli
