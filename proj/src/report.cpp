#include "mcmpb/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace mcmpb {

using nlohmann::json;

std::string report_to_json(const fit_report& r, int indent) {
    json j;
    j["model"] = r.model;
    j["n"] = r.n;
    j["profile_n"] = r.profile_n;
    j["param_names"] = r.param_names;
    j["estimates"] = r.estimates;
    j["se"] = r.se;
    json ci = json::array();
    for (const auto& pair : r.ci95) ci.push_back({pair[0], pair[1]});
    j["ci95"] = ci;
    j["ci_available"] = r.ci_available;
    j["loglik"] = r.loglik;
    j["aic"] = r.aic;
    j["gof"] = {{"chisq", r.gof.chisq},       {"df", r.gof.df},
                {"p_value", r.gof.p_value},   {"cells", r.gof.cells},
                {"df_floored", r.gof.df_floored}, {"merged_cells", r.gof.merged_cells}};
    j["values"] = r.values;
    j["observed"] = r.observed;
    j["expected"] = r.expected;
    j["truncated"] = r.truncated;
    j["converged"] = r.converged;
    j["boundary_solution"] = r.boundary_solution;
    j["moment_equations_ok"] = r.moment_equations_ok;
    j["notes"] = r.notes;
    return j.dump(indent);
}

fit_report report_from_json(const std::string& text) {
    const json j = json::parse(text);
    fit_report r;
    r.model = j.at("model").get<std::string>();
    r.n = j.at("n").get<int>();
    r.profile_n = j.at("profile_n").get<bool>();
    r.param_names = j.at("param_names").get<std::vector<std::string>>();
    r.estimates = j.at("estimates").get<std::vector<double>>();
    r.se = j.at("se").get<std::vector<double>>();
    for (const auto& pair : j.at("ci95"))
        r.ci95.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    r.ci_available = j.at("ci_available").get<bool>();
    r.loglik = j.at("loglik").get<double>();
    r.aic = j.at("aic").get<double>();
    const json& g = j.at("gof");
    r.gof.chisq = g.at("chisq").get<double>();
    r.gof.df = g.at("df").get<int>();
    r.gof.p_value = g.at("p_value").get<double>();
    r.gof.cells = g.at("cells").get<int>();
    r.gof.df_floored = g.at("df_floored").get<bool>();
    r.gof.merged_cells = g.at("merged_cells").get<std::string>();
    r.values = j.at("values").get<std::vector<int>>();
    r.observed = j.at("observed").get<std::vector<long long>>();
    r.expected = j.at("expected").get<std::vector<double>>();
    r.truncated = j.at("truncated").get<bool>();
    r.converged = j.at("converged").get<bool>();
    r.boundary_solution = j.at("boundary_solution").get<bool>();
    r.moment_equations_ok = j.at("moment_equations_ok").get<bool>();
    r.notes = j.at("notes").get<std::string>();
    return r;
}

std::string report_to_text(const fit_report& r, const std::string& dataset_name) {
    std::ostringstream out;
    out << "model: " << r.model;
    if (!dataset_name.empty()) out << "   dataset: " << dataset_name;
    long long total = 0;
    for (long long f : r.observed) total += f;
    out << "   N = " << total;
    if (r.n >= 0) {
        out << "   n = " << r.n;
        if (r.profile_n) out << " (profile)";
    }
    if (r.truncated) out << "   zero-truncated";
    out << "\n";

    out << std::setprecision(6);
    for (std::size_t i = 0; i < r.param_names.size(); ++i) {
        out << "  " << std::setw(8) << std::left << r.param_names[i] << std::right
            << " = " << std::setw(12) << r.estimates[i];
        if (r.ci_available && i < r.se.size()) {
            out << "   se = " << std::setw(10) << r.se[i] << "   95% CI ("
                << r.ci95[i][0] << ", " << r.ci95[i][1] << ")";
        }
        out << "\n";
    }
    out << "  loglik = " << std::setprecision(10) << r.loglik
        << "   AIC = " << r.aic << std::setprecision(6) << "\n";
    out << "  chi-square = " << r.gof.chisq << "   df = " << r.gof.df
        << "   p = " << r.gof.p_value << "   (" << r.gof.merged_cells << ")\n";
    if (!r.converged) out << "  WARNING: optimizer did not converge\n";
    if (r.boundary_solution) out << "  WARNING: boundary solution\n";
    if (!r.moment_equations_ok)
        out << "  WARNING: likelihood equations violated at the reported optimum\n";
    if (!r.notes.empty()) out << "  notes: " << r.notes << "\n";

    out << "\n  count   observed     expected\n";
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        out << "  " << std::setw(5) << r.values[i] << "   " << std::setw(8)
            << r.observed[i] << "   " << std::setw(10) << std::fixed
            << std::setprecision(2) << r.expected[i] << "\n";
        out.unsetf(std::ios_base::floatfield);
        out << std::setprecision(6);
    }
    return out.str();
}

}  // namespace mcmpb
