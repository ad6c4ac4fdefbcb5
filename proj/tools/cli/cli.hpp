#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steklov/cross_section.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/theorem_lab.hpp"
#include "steklov/warp_profile.hpp"

namespace steklov::cli {

inline constexpr const char* kToolVersion = "steklov 0.1.0";

// Exit-code contract.
enum ExitStatus : int { success = 0, check_failed = 1, configuration_error = 2, numerical_error = 3 };

enum class Task { spectrum, theorem };
enum class EngineChoice { fem, shooting, both };
enum class Format { csv, json };

EngineChoice parse_engine(const std::string& name);
Format parse_format(const std::string& name);

struct ProfileSpec {
    nlohmann::json source;
    WarpProfile build() const;
};

struct CrossSectionSpec {
    nlohmann::json source;
    CrossSectionSpectrum build() const;
};

struct RunConfig {
    Task task = Task::spectrum;
    std::optional<ProfileSpec> profile;
    std::optional<CrossSectionSpec> cross_section;
    std::size_t count = 10;
    std::size_t mesh = 4096;
    EngineChoice engine = EngineChoice::fem;
    std::optional<Statement> experiment;
    nlohmann::json experiment_parameters = nlohmann::json::object();
    std::optional<std::filesystem::path> output;
    std::optional<std::filesystem::path> plotdata;
    Format format = Format::csv;

    // Effective configuration echoed into output headers.
    nlohmann::json echo() const;
};

struct Overrides {
    std::optional<std::filesystem::path> output;
    std::optional<std::string> format;
    std::optional<std::size_t> mesh;
    std::optional<std::string> engine;
};

// Throws ConfigurationError naming the offending field.
RunConfig parse_config(const nlohmann::json& document, const Overrides& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

// Executes the task, writing the result to config.output (or `out` when unset).
// Returns an ExitStatus; diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

// Loads, validates and runs, mapping every failure onto the exit-code contract.
int run_from_file(const std::filesystem::path& path, const Overrides& overrides, std::ostream& out,
                  std::ostream& log);

// Rows (epsilon, value, bound) per series, in the sweep's decreasing-epsilon order.
void emit_sweep_plotdata(const SweepReport& report, const std::filesystem::path& path);
void write_sweep_plotdata(const SweepReport& report, std::ostream& os);

// Writers shared by run().
std::string format_number(double value);

struct SpectrumResult {
    SteklovSpectrum spectrum;
    std::optional<std::vector<double>> alternate;  // other engine, same counted order
    double discretization_error = 0.0;
    std::optional<double> engine_disagreement;
    std::string engine;
};

void write_spectrum(const RunConfig& config, const SpectrumResult& result, std::ostream& os);
void write_bound_report(const RunConfig& config, const BoundReport& report, std::ostream& os);
void write_sweep_report(const RunConfig& config, const SweepReport& report, std::ostream& os);
void write_precondition_failure(const RunConfig& config, const std::string& message, std::ostream& os);

}  // namespace steklov::cli
