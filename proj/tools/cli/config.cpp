#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "cli/cli.hpp"
#include "steklov/errors.hpp"

namespace steklov::cli {

using nlohmann::json;

namespace {

std::string field_path(const std::string& context, const std::string& key) {
    return context.empty() ? key : context + "." + key;
}

const json& require(const json& object, const std::string& key, const std::string& context) {
    if (!object.is_object() || !object.contains(key))
        throw ConfigurationError("missing field '" + field_path(context, key) + "'");
    return object.at(key);
}

double number_at(const json& object, const std::string& key, const std::string& context) {
    const json& value = require(object, key, context);
    if (!value.is_number())
        throw ConfigurationError("field '" + field_path(context, key) + "' must be a number");
    double x = value.get<double>();
    if (!std::isfinite(x))
        throw ConfigurationError("field '" + field_path(context, key) + "' must be finite");
    return x;
}

double positive_at(const json& object, const std::string& key, const std::string& context) {
    double x = number_at(object, key, context);
    if (x <= 0.0) throw ConfigurationError("field '" + field_path(context, key) + "' must be positive");
    return x;
}

std::size_t count_at(const json& object, const std::string& key, const std::string& context,
                     std::size_t minimum = 0) {
    const json& value = require(object, key, context);
    if (!value.is_number_integer() || value.get<long long>() < static_cast<long long>(minimum))
        throw ConfigurationError("field '" + field_path(context, key) + "' must be an integer >= " +
                                 std::to_string(minimum));
    return value.get<std::size_t>();
}

std::string string_at(const json& object, const std::string& key, const std::string& context) {
    const json& value = require(object, key, context);
    if (!value.is_string())
        throw ConfigurationError("field '" + field_path(context, key) + "' must be a string");
    return value.get<std::string>();
}

std::vector<double> numbers_at(const json& object, const std::string& key, const std::string& context) {
    const json& value = require(object, key, context);
    if (!value.is_array())
        throw ConfigurationError("field '" + field_path(context, key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : value) {
        if (!x.is_number())
            throw ConfigurationError("field '" + field_path(context, key) + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

template <class F>
auto rethrow_as_configuration(const std::string& field, F&& f) {
    try {
        return f();
    } catch (const ConfigurationError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigurationError("field '" + field + "': " + e.what());
    }
}

void check_experiment(Statement statement, const json& p, const RunConfig& config) {
    const std::string ctx = "experiment";
    auto need_profile = [&] {
        if (!config.profile) throw ConfigurationError("missing field 'profile'");
    };
    switch (statement) {
        case Statement::upper_bound:
            need_profile();
            count_at(p, "j_max", ctx, 1);
            break;
        case Statement::supremum:
            positive_at(p, "L", ctx);
            count_at(p, "j_max", ctx, 1);
            numbers_at(p, "epsilons", ctx);
            break;
        case Statement::collapse:
            positive_at(p, "L", ctx);
            positive_at(p, "lambda", ctx);
            numbers_at(p, "epsilons", ctx);
            break;
        case Statement::stability:
            need_profile();
            number_at(p, "L1", ctx);
            number_at(p, "L2", ctx);
            positive_at(p, "c", ctx);
            positive_at(p, "lambda", ctx);
            break;
        case Statement::revolution_bound:
            need_profile();
            count_at(p, "j_max", ctx, 1);
            break;
        case Statement::revolution_gap:
            count_at(p, "j_max", ctx, 1);
            if (p.contains("epsilons")) {
                positive_at(p, "L", ctx);
                positive_at(p, "h0", ctx);
                numbers_at(p, "epsilons", ctx);
            } else {
                need_profile();
            }
            break;
    }
}

}  // namespace

EngineChoice parse_engine(const std::string& name) {
    if (name == "fem") return EngineChoice::fem;
    if (name == "shooting") return EngineChoice::shooting;
    if (name == "both") return EngineChoice::both;
    throw ConfigurationError("field 'engine' must be one of fem, shooting, both (got '" + name + "')");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ConfigurationError("field 'format' must be csv or json (got '" + name + "')");
}

WarpProfile ProfileSpec::build() const {
    const std::string ctx = "profile";
    if (!source.is_object()) throw ConfigurationError("field 'profile' must be an object");
    return rethrow_as_configuration(ctx, [&]() -> WarpProfile {
        if (source.contains("table")) {
            const json& table = source.at("table");
            auto t = numbers_at(table, "t", "profile.table");
            auto h = numbers_at(table, "h", "profile.table");
            ProfileKind kind = ProfileKind::condition_h;
            if (source.contains("kind")) kind = parse_profile_kind(string_at(source, "kind", ctx));
            return make_table_profile(std::move(t), std::move(h), kind);
        }
        std::string family = string_at(source, "family", ctx);
        double length = positive_at(source, "L", ctx);
        if (family == "cylinder") return make_cylinder(length);
        if (family == "plateau")
            return make_plateau_family(length, positive_at(source, "epsilon", ctx),
                                       positive_at(source, "plateau", ctx));
        if (family == "revolution_plateau")
            return make_revolution_plateau(length, positive_at(source, "epsilon", ctx),
                                           positive_at(source, "h0", ctx));
        if (family == "capped") return make_capped_profile(length, positive_at(source, "h0", ctx));
        throw ConfigurationError("field 'profile.family' must be one of cylinder, plateau, "
                                 "revolution_plateau, capped (got '" + family + "')");
    });
}

CrossSectionSpectrum CrossSectionSpec::build() const {
    const std::string ctx = "cross_section";
    if (!source.is_object()) throw ConfigurationError("field 'cross_section' must be an object");
    return rethrow_as_configuration(ctx, [&]() -> CrossSectionSpectrum {
        if (source.contains("values")) {
            const json& values = source.at("values");
            if (!values.is_array() || values.empty())
                throw ConfigurationError("field 'cross_section.values' must be a nonempty array");
            std::vector<LaplaceEigenvalue> entries;
            for (const auto& pair : values) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                    !pair[1].is_number_integer())
                    throw ConfigurationError(
                        "field 'cross_section.values' must hold [lambda, multiplicity] pairs");
                entries.push_back({pair[0].get<double>(), pair[1].get<int>()});
            }
            return custom_spectrum(std::move(entries));
        }
        std::string generator = string_at(source, "generator", ctx);
        if (generator != "sphere")
            throw ConfigurationError("field 'cross_section.generator' must be 'sphere'");
        std::size_t j_max = count_at(source, "j_max", ctx, 1);
        Normalization normalization = Normalization::unit_radius;
        if (source.contains("normalization"))
            normalization = parse_normalization(string_at(source, "normalization", ctx));
        return sphere_spectrum(j_max, normalization);
    });
}

json RunConfig::echo() const {
    json out = json::object();
    out["task"] = task == Task::spectrum ? "spectrum" : "theorem";
    if (profile) out["profile"] = profile->source;
    if (cross_section) out["cross_section"] = cross_section->source;
    if (task == Task::spectrum) out["count"] = count;
    out["mesh"] = mesh;
    out["engine"] = engine == EngineChoice::fem ? "fem" : engine == EngineChoice::shooting ? "shooting" : "both";
    if (experiment) {
        json e = experiment_parameters;
        e["name"] = std::string(to_string(*experiment));
        out["experiment"] = e;
    }
    out["format"] = format == Format::csv ? "csv" : "json";
    return out;
}

RunConfig parse_config(const json& document, const Overrides& overrides) {
    if (!document.is_object()) throw ConfigurationError("configuration must be a JSON object");
    RunConfig config;

    std::string task = string_at(document, "task", "");
    if (task == "spectrum")
        config.task = Task::spectrum;
    else if (task == "theorem")
        config.task = Task::theorem;
    else
        throw ConfigurationError("field 'task' must be spectrum or theorem (got '" + task + "')");

    if (document.contains("profile")) {
        config.profile = ProfileSpec{document.at("profile")};
        config.profile->build();
    }
    if (document.contains("cross_section")) {
        config.cross_section = CrossSectionSpec{document.at("cross_section")};
        config.cross_section->build();
    }
    if (document.contains("mesh")) config.mesh = count_at(document, "mesh", "", 8);
    if (document.contains("engine")) config.engine = parse_engine(string_at(document, "engine", ""));
    if (document.contains("format")) config.format = parse_format(string_at(document, "format", ""));
    if (document.contains("output")) config.output = string_at(document, "output", "");
    if (document.contains("plotdata")) config.plotdata = string_at(document, "plotdata", "");

    if (overrides.output) config.output = *overrides.output;
    if (overrides.format) config.format = parse_format(*overrides.format);
    if (overrides.engine) config.engine = parse_engine(*overrides.engine);
    if (overrides.mesh) {
        if (*overrides.mesh < 8) throw ConfigurationError("field 'mesh' must be an integer >= 8");
        config.mesh = *overrides.mesh;
    }

    if (config.task == Task::spectrum) {
        if (!config.profile) throw ConfigurationError("missing field 'profile'");
        if (!config.cross_section) throw ConfigurationError("missing field 'cross_section'");
        config.count = count_at(document, "count", "", 1);
    } else {
        const json& experiment = require(document, "experiment", "");
        if (!experiment.is_object()) throw ConfigurationError("field 'experiment' must be an object");
        std::string name = string_at(experiment, "name", "experiment");
        try {
            config.experiment = parse_statement(name);
        } catch (const Error& e) {
            throw ConfigurationError(std::string("field 'experiment.name': ") + e.what());
        }
        config.experiment_parameters = experiment;
        config.experiment_parameters.erase("name");
        check_experiment(*config.experiment, config.experiment_parameters, config);
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot read configuration file '" + path.string() + "'");
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigurationError("malformed configuration '" + path.string() + "': " + e.what());
    }
    return parse_config(document, overrides);
}

}  // namespace steklov::cli
