#include <algorithm>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "cli/cli.hpp"

namespace steklov::cli {

using nlohmann::json;

namespace {

void write_common_header(const RunConfig& config, std::ostream& os) {
    os << "# " << kToolVersion << '\n';
    os << "# config: " << config.echo().dump() << '\n';
}

std::string parameter_list(const std::vector<NamedValue>& parameters) {
    std::string out;
    for (const auto& p : parameters) {
        if (!out.empty()) out += ' ';
        out += p.name + '=' + format_number(p.value);
    }
    return out;
}

json parameter_object(const std::vector<NamedValue>& parameters) {
    json out = json::object();
    for (const auto& p : parameters) out[p.name] = p.value;
    return out;
}

std::vector<const SpectrumEntry*> counted_entries(const SteklovSpectrum& spectrum) {
    std::vector<const SpectrumEntry*> out;
    for (const auto& e : spectrum.entries)
        for (int m = 0; m < e.multiplicity && out.size() < spectrum.counted.size(); ++m) out.push_back(&e);
    return out;
}

double sweep_error(const SweepReport& report) {
    double worst = 0.0;
    for (const auto& s : report.series)
        for (const auto& p : s.points) worst = std::max(worst, p.error_estimate);
    return worst;
}

double bound_error(const BoundReport& report) {
    double worst = 0.0;
    for (const auto& c : report.checks) worst = std::max(worst, c.error_estimate);
    return worst;
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_number(double value) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << value;
    return os.str();
}

void write_spectrum(const RunConfig& config, const SpectrumResult& result, std::ostream& os) {
    const auto rows = counted_entries(result.spectrum);
    if (config.format == Format::json) {
        json doc;
        doc["tool"] = kToolVersion;
        doc["config"] = config.echo();
        doc["engine"] = result.engine;
        doc["j_max"] = result.spectrum.j_max;
        doc["discretization_error"] = result.discretization_error;
        if (result.engine_disagreement) doc["engine_disagreement"] = *result.engine_disagreement;
        json data = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            json row = {{"index", i},
                        {"sigma", result.spectrum.counted[i]},
                        {"j", rows[i]->mode},
                        {"branch", std::string(to_string(rows[i]->branch))},
                        {"multiplicity", rows[i]->multiplicity}};
            if (result.alternate) row["sigma_shooting"] = (*result.alternate)[i];
            data.push_back(row);
        }
        doc["rows"] = data;
        os << doc.dump(2) << '\n';
        return;
    }

    write_common_header(config, os);
    os << "# task: spectrum\n";
    os << "# engine: " << result.engine << '\n';
    os << "# j_max: " << result.spectrum.j_max << '\n';
    os << "# discretization_error: " << format_number(result.discretization_error) << '\n';
    if (result.engine_disagreement)
        os << "# engine_disagreement: " << format_number(*result.engine_disagreement) << '\n';
    os << "index,sigma,j,branch,multiplicity";
    if (result.alternate) os << ",sigma_shooting";
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << i << ',' << format_number(result.spectrum.counted[i]) << ',' << rows[i]->mode << ','
           << to_string(rows[i]->branch) << ',' << rows[i]->multiplicity;
        if (result.alternate) os << ',' << format_number((*result.alternate)[i]);
        os << '\n';
    }
}

void write_bound_report(const RunConfig& config, const BoundReport& report, std::ostream& os) {
    if (config.format == Format::json) {
        json doc;
        doc["tool"] = kToolVersion;
        doc["config"] = config.echo();
        doc["statement"] = std::string(to_string(report.statement));
        doc["parameters"] = parameter_object(report.parameters);
        doc["discretization_error"] = bound_error(report);
        doc["pass"] = report.pass;
        doc["failures"] = report.failures;
        json checks = json::array();
        for (const auto& c : report.checks)
            checks.push_back({{"quantity", c.quantity},
                              {"computed", c.computed},
                              {"bound", c.bound},
                              {"margin", c.margin},
                              {"error_estimate", c.error_estimate},
                              {"strict", c.strict},
                              {"pass", c.pass}});
        doc["checks"] = checks;
        os << doc.dump(2) << '\n';
        return;
    }

    write_common_header(config, os);
    os << "# task: theorem\n";
    os << "# statement: " << to_string(report.statement) << '\n';
    os << "# parameters: " << parameter_list(report.parameters) << '\n';
    os << "# discretization_error: " << format_number(bound_error(report)) << '\n';
    os << "# pass: " << flag(report.pass) << '\n';
    for (const auto& f : report.failures) os << "# failure: " << f << '\n';
    os << "quantity,computed,bound,margin,error_estimate,strict,pass\n";
    for (const auto& c : report.checks)
        os << c.quantity << ',' << format_number(c.computed) << ',' << format_number(c.bound) << ','
           << format_number(c.margin) << ',' << format_number(c.error_estimate) << ',' << flag(c.strict) << ','
           << flag(c.pass) << '\n';
}

void write_sweep_report(const RunConfig& config, const SweepReport& report, std::ostream& os) {
    if (config.format == Format::json) {
        json doc;
        doc["tool"] = kToolVersion;
        doc["config"] = config.echo();
        doc["statement"] = std::string(to_string(report.statement));
        doc["parameters"] = parameter_object(report.parameters);
        doc["discretization_error"] = sweep_error(report);
        doc["pass"] = report.pass;
        doc["failures"] = report.failures;
        json series = json::array();
        for (const auto& s : report.series) {
            json item = {{"quantity", s.quantity}, {"mode", s.mode}};
            if (s.fitted_exponent) item["fitted_exponent"] = *s.fitted_exponent;
            json points = json::array();
            for (const auto& p : s.points) {
                json point = {{"epsilon", p.epsilon},
                              {"value", p.value},
                              {"bound", p.bound},
                              {"error_estimate", p.error_estimate}};
                if (p.sup_deviation) point["sup_deviation"] = *p.sup_deviation;
                if (p.second_branch_above) point["second_branch_above"] = *p.second_branch_above;
                points.push_back(point);
            }
            item["points"] = points;
            series.push_back(item);
        }
        doc["series"] = series;
        os << doc.dump(2) << '\n';
        return;
    }

    write_common_header(config, os);
    os << "# task: theorem\n";
    os << "# statement: " << to_string(report.statement) << '\n';
    os << "# parameters: " << parameter_list(report.parameters) << '\n';
    os << "# discretization_error: " << format_number(sweep_error(report)) << '\n';
    for (const auto& s : report.series)
        if (s.fitted_exponent) os << "# fitted_exponent " << s.quantity << ": " << format_number(*s.fitted_exponent) << '\n';
    os << "# pass: " << flag(report.pass) << '\n';
    for (const auto& f : report.failures) os << "# failure: " << f << '\n';
    os << "series,mode,epsilon,value,bound,error_estimate,sup_deviation,second_branch_above\n";
    for (const auto& s : report.series)
        for (const auto& p : s.points) {
            os << s.quantity << ',' << s.mode << ',' << format_number(p.epsilon) << ',' << format_number(p.value)
               << ',' << format_number(p.bound) << ',' << format_number(p.error_estimate) << ',';
            if (p.sup_deviation) os << format_number(*p.sup_deviation);
            os << ',';
            if (p.second_branch_above) os << flag(*p.second_branch_above);
            os << '\n';
        }
}

void write_precondition_failure(const RunConfig& config, const std::string& message, std::ostream& os) {
    if (config.format == Format::json) {
        json doc;
        doc["tool"] = kToolVersion;
        doc["config"] = config.echo();
        doc["statement"] = std::string(to_string(*config.experiment));
        doc["pass"] = false;
        doc["precondition_failure"] = message;
        os << doc.dump(2) << '\n';
        return;
    }
    write_common_header(config, os);
    os << "# task: theorem\n";
    os << "# statement: " << to_string(*config.experiment) << '\n';
    os << "# pass: false\n";
    os << "# precondition_failure: " << message << '\n';
}

void write_sweep_plotdata(const SweepReport& report, std::ostream& os) {
    for (const auto& s : report.series) {
        os << "# series " << s.quantity << '\n';
        os << "epsilon,value,bound\n";
        for (const auto& p : s.points)
            os << format_number(p.epsilon) << ',' << format_number(p.value) << ',' << format_number(p.bound) << '\n';
    }
}

void emit_sweep_plotdata(const SweepReport& report, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open plot data file '" + path.string() + "'");
    write_sweep_plotdata(report, file);
    file.flush();
    if (!file) throw std::ios_base::failure("failed writing plot data file '" + path.string() + "'");
}

}  // namespace steklov::cli
