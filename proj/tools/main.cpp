#include <iostream>

#include <CLI11.hpp>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Steklov spectra of warped products and bound experiments"};

    std::string config_path;
    steklov::cli::Overrides overrides;
    std::string output, format, engine;
    std::size_t mesh = 0;

    app.add_option("--config", config_path, "JSON run configuration")->required();
    auto* output_opt = app.add_option("--output", output, "output file (default: stdout)");
    auto* format_opt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* mesh_opt = app.add_option("--mesh", mesh, "number of elements (>= 8)");
    auto* engine_opt =
        app.add_option("--engine", engine, "fem, shooting or both")->check(CLI::IsMember({"fem", "shooting", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : steklov::cli::configuration_error;
    }

    if (*output_opt) overrides.output = output;
    if (*format_opt) overrides.format = format;
    if (*mesh_opt) overrides.mesh = mesh;
    if (*engine_opt) overrides.engine = engine;

    return steklov::cli::run_from_file(config_path, overrides, std::cout, std::cerr);
}
