// Python bindings for the core operations: distribution tables, moments,
// sampling, the queue oracle pair, CMP-family laws, dataset fixtures, and
// the maximum-likelihood fitters.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcmpb/cmp.hpp"
#include "mcmpb/competitors.hpp"
#include "mcmpb/data.hpp"
#include "mcmpb/distribution.hpp"
#include "mcmpb/fit.hpp"
#include "mcmpb/gof.hpp"
#include "mcmpb/queue.hpp"
#include "mcmpb/report.hpp"

namespace py = pybind11;
using namespace mcmpb;

namespace {

py::dict report_to_dict(const fit_report& r) {
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(report_to_json(r));
}

frequency_data data_from_python(const std::vector<std::pair<int, long long>>& rows,
                                bool truncated) {
    frequency_data data;
    for (const auto& [value, freq] : rows) data.rows.push_back({value, freq});
    data.truncated_at_zero = truncated;
    data.validate();
    return data;
}

}  // namespace

PYBIND11_MODULE(_mcmpb, m) {
    m.doc() = "bounded two-exponent count distribution toolkit";

    py::class_<params>(m, "Params")
        .def(py::init([](int n, double alpha, double beta, double psi) {
                 params p{n, alpha, beta, psi};
                 p.validate();
                 return p;
             }),
             py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("psi"))
        .def_readonly("n", &params::n)
        .def_readonly("alpha", &params::alpha)
        .def_readonly("beta", &params::beta)
        .def_readonly("psi", &params::psi)
        .def("theta", &params::theta)
        .def("__repr__", [](const params& p) {
            return "Params(n=" + std::to_string(p.n) + ", alpha=" + std::to_string(p.alpha) +
                   ", beta=" + std::to_string(p.beta) + ", psi=" + std::to_string(p.psi) + ")";
        });

    py::class_<frequency_data>(m, "FrequencyData")
        .def(py::init(&data_from_python), py::arg("rows"), py::arg("truncated") = false)
        .def_property_readonly("values",
                               [](const frequency_data& d) {
                                   std::vector<int> v;
                                   for (const auto& r : d.rows) v.push_back(r.value);
                                   return v;
                               })
        .def_property_readonly("frequencies",
                               [](const frequency_data& d) {
                                   std::vector<long long> f;
                                   for (const auto& r : d.rows) f.push_back(r.frequency);
                                   return f;
                               })
        .def_readonly("truncated_at_zero", &frequency_data::truncated_at_zero)
        .def("total", &frequency_data::total)
        .def("max_value", &frequency_data::max_value)
        .def("mean", &frequency_data::mean);

    m.def("pmf_table", [](const params& p) { return build_table(p).pmf; },
          py::arg("params"), "probability mass function on {0, ..., n}");
    m.def("cdf_table", [](const params& p) { return build_table(p).cdf; }, py::arg("params"));
    m.def("log_pmf", &log_pmf, py::arg("params"), py::arg("x"));
    m.def("moments",
          [](const params& p) {
              const moment_set ms = moments(p);
              py::dict d;
              d["mean"] = ms.mean;
              d["raw"] = ms.raw;
              d["mu2"] = ms.mu2;
              d["mu3"] = ms.mu3;
              d["mu4"] = ms.mu4;
              d["dispersion_index"] = ms.dispersion_index;
              d["skewness"] = ms.skewness;
              d["excess_kurtosis"] = ms.excess_kurtosis;
              return d;
          },
          py::arg("params"));
    m.def("sample",
          [](const params& p, std::size_t count, std::uint64_t seed) {
              return sample(p, count, seed);
          },
          py::arg("params"), py::arg("count"), py::arg("seed"));
    m.def("reflect", &reflect, py::arg("params"));
    m.def("classify_modality",
          [](const params& p) {
              const modality shape = classify_modality(p);
              py::dict d;
              d["kind"] = to_string(shape.kind);
              d["modes"] = shape.kind == modality_kind::unimodal
                               ? std::vector<int>{shape.mode_low}
                               : std::vector<int>{shape.mode_low, shape.mode_high};
              return d;
          },
          py::arg("params"));
    m.def("is_log_concave", &is_log_concave, py::arg("params"), py::arg("slack") = 1e-12);
    m.def("stein_residual", &stein_residual, py::arg("params"), py::arg("f"));
    m.def("power_bias", &power_bias, py::arg("pmf"), py::arg("w"));

    m.def("cmp_log_norm",
          [](double r, double lam) { return cmp_log_norm({r, lam}); }, py::arg("r"),
          py::arg("lam"));
    m.def("cmp_pmf", [](double r, double lam, int x) { return cmp_pmf({r, lam}, x); },
          py::arg("r"), py::arg("lam"), py::arg("x"));
    m.def("truncated_cmp_pmf",
          [](double r, double lam, int n, int x) {
              return truncated_cmp_pmf({r, lam}, n, x);
          },
          py::arg("r"), py::arg("lam"), py::arg("n"), py::arg("x"));
    m.def("cmpb_pmf", &cmpb_pmf, py::arg("n"), py::arg("alpha"), py::arg("psi"),
          py::arg("x"));
    m.def("conditional_given_sum",
          [](double alpha, double lambda1, double beta, double lambda2, int n) {
              return conditional_given_sum({{alpha, lambda1}, {beta, lambda2}}, n);
          },
          py::arg("alpha"), py::arg("lambda1"), py::arg("beta"), py::arg("lambda2"),
          py::arg("n"));

    m.def("stationary_exact",
          [](int n, double alpha, double beta, double mu, double lambda_rate) {
              return stationary_exact({n, alpha, beta, mu, lambda_rate});
          },
          py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("mu"),
          py::arg("lambda_rate"));
    m.def("simulate_queue",
          [](int n, double alpha, double beta, double mu, double lambda_rate,
             double horizon, std::uint64_t seed) {
              const simulation_summary s =
                  simulate({n, alpha, beta, mu, lambda_rate}, horizon, seed);
              py::dict d;
              d["occupancy"] = s.occupancy;
              d["events"] = s.events;
              return d;
          },
          py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("mu"),
          py::arg("lambda_rate"), py::arg("horizon"), py::arg("seed"));

    m.def("fixture_names", &fixture_names);
    m.def("load_fixture", &load_fixture, py::arg("name"));
    m.def("parse_dataset", &parse_dataset, py::arg("text"),
          py::arg("source_name") = "<string>");

    m.def("log_likelihood", &log_likelihood, py::arg("data"), py::arg("params"));
    m.def("fit_fixed_n",
          [](const frequency_data& d, int n) { return report_to_dict(fit_fixed_n(d, n)); },
          py::arg("data"), py::arg("n"));
    m.def("fit_profile_n",
          [](const frequency_data& d) { return report_to_dict(fit_profile_n(d)); },
          py::arg("data"));
    m.def("fit_nb", [](const frequency_data& d) { return report_to_dict(fit_nb(d)); },
          py::arg("data"));
    m.def("fit_cmp", [](const frequency_data& d) { return report_to_dict(fit_cmp(d)); },
          py::arg("data"));
    m.def("fit_bb",
          [](const frequency_data& d, int n) { return report_to_dict(fit_bb(d, n)); },
          py::arg("data"), py::arg("n"));
    m.def("fit_cmpb",
          [](const frequency_data& d, int n) { return report_to_dict(fit_cmpb(d, n)); },
          py::arg("data"), py::arg("n"));

    m.def("chisq_test",
          [](const std::vector<double>& observed, const std::vector<double>& expected,
             int k_params) {
              const gof_summary g = chisq_test(observed, expected, k_params);
              py::dict d;
              d["chisq"] = g.chisq;
              d["df"] = g.df;
              d["p_value"] = g.p_value;
              d["cells"] = g.cells;
              d["df_floored"] = g.df_floored;
              d["merged_cells"] = g.merged_cells;
              return d;
          },
          py::arg("observed"), py::arg("expected"), py::arg("k_params"));
}
