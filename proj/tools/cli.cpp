#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "mcmpb/competitors.hpp"
#include "mcmpb/cmp.hpp"
#include "mcmpb/data.hpp"
#include "mcmpb/distribution.hpp"
#include "mcmpb/fit.hpp"
#include "mcmpb/queue.hpp"
#include "mcmpb/report.hpp"

namespace mcmpb::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_data = 3;
constexpr int exit_no_convergence = 4;

frequency_data resolve_dataset(const std::string& name, bool force_truncated) {
    frequency_data data;
    if (std::filesystem::exists(name)) {
        data = load_dataset_file(name);
    } else if (is_fixture(name)) {
        data = load_fixture(name);
    } else {
        throw parse_error(name, 1, 1, "no such dataset file or bundled fixture");
    }
    if (force_truncated) {
        data.truncated_at_zero = true;
        data.validate();  // rejects zero counts under truncation
    }
    return data;
}

struct fit_args {
    std::string dataset;
    std::string model = "mcmpb";
    std::string n = "auto";
    bool truncated = false;
    std::string out_path;
};

int run_fit(const fit_args& args, std::ostream& out, std::ostream& err) {
    frequency_data data;
    try {
        data = resolve_dataset(args.dataset, args.truncated);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }

    int fixed_n = -1;  // -1 means profile over n
    if (args.n != "auto") {
        int parsed = 0;
        const auto [ptr, ec] =
            std::from_chars(args.n.data(), args.n.data() + args.n.size(), parsed);
        if (ec != std::errc() || ptr != args.n.data() + args.n.size() || parsed < 0) {
            err << "error: --n must be 'auto' or a nonnegative integer\n";
            return exit_usage;
        }
        fixed_n = parsed;
    }

    fit_report report;
    try {
        if (args.model == "mcmpb") {
            report = fixed_n < 0 ? fit_profile_n(data) : fit_fixed_n(data, fixed_n);
        } else if (args.model == "cmpb") {
            report = fixed_n < 0 ? fit_cmpb_profile(data) : fit_cmpb(data, fixed_n);
        } else if (args.model == "bb") {
            report = fixed_n < 0 ? fit_bb_profile(data) : fit_bb(data, fixed_n);
        } else if (args.model == "nb") {
            report = fit_nb(data);
        } else {
            report = fit_cmp(data);
        }
    } catch (const fit_error& e) {
        err << "error: " << e.what() << "\n";
        if (!e.best().param_names.empty())
            err << "best point found:\n" << report_to_text(e.best(), args.dataset);
        return exit_no_convergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }

    out << report_to_text(report, args.dataset);
    if (!args.out_path.empty()) {
        std::ofstream file(args.out_path);
        if (!file) {
            err << "error: cannot write '" << args.out_path << "'\n";
            return exit_data;
        }
        file << report_to_json(report) << "\n";
    }
    return exit_ok;
}

struct simulate_args {
    int n = 1;
    double alpha = 1.0;
    double beta = 1.0;
    double lambda = 1.0;
    double mu = 1.0;
    double horizon = 1e5;
    std::uint64_t seed = 1;
    int init = 0;
};

int run_simulate(const simulate_args& args, std::ostream& out, std::ostream& err) {
    queue_spec spec{args.n, args.alpha, args.beta, args.mu, args.lambda};
    try {
        spec.validate();
        if (args.init < 0 || args.init > spec.n)
            throw std::invalid_argument("--init must lie in {0, ..., n}");
        if (!(args.horizon > 0.0))
            throw std::invalid_argument("--horizon must be > 0");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    const std::vector<double> exact = stationary_exact(spec);
    const simulation_summary sim = simulate(spec, args.horizon, args.seed, args.init);
    const double tv = total_variation(exact, sim.occupancy);

    out << "state   stationary     occupancy\n" << std::setprecision(9);
    for (std::size_t x = 0; x < exact.size(); ++x)
        out << std::setw(5) << x << "   " << std::setw(12) << exact[x] << "   "
            << std::setw(12) << sim.occupancy[x] << "\n";
    out << "events = " << sim.events << "\n";
    out << "total variation = " << tv << "\n";
    return exit_ok;
}

struct pmf_args {
    int n = 0;
    double alpha = 1.0;
    double beta = 1.0;
    double psi = 0.0;
    bool do_reflect = false;
    bool with_moments = false;
};

int run_pmf(const pmf_args& args, std::ostream& out, std::ostream& err) {
    params p{args.n, args.alpha, args.beta, args.psi};
    try {
        p.validate();
        if (args.do_reflect) p = reflect(p);
        const prob_table t = build_table(p);
        out << std::setprecision(12);
        out << "x   pmf   cdf\n";
        for (int x = 0; x <= t.n; ++x)
            out << x << "   " << t.pmf[static_cast<std::size_t>(x)] << "   "
                << t.cdf[static_cast<std::size_t>(x)] << "\n";
        if (args.with_moments) {
            const moment_set m = moments(t);
            out << "mean = " << m.mean << "\n";
            out << "variance = " << m.mu2 << "\n";
            out << "dispersion index = " << m.dispersion_index << "\n";
            out << "skewness = " << m.skewness << "\n";
            out << "excess kurtosis = " << m.excess_kurtosis << "\n";
            const modality shape = classify_modality(p);
            out << "modality = " << to_string(shape.kind);
            if (shape.kind == modality_kind::unimodal)
                out << " (mode " << shape.mode_low << ")";
            else if (shape.kind != modality_kind::uniform)
                out << " (modes " << shape.mode_low << ", " << shape.mode_high << ")";
            out << "\n";
        }
        return exit_ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

struct grid_args {
    int n = 10;
    double psi = 0.0;
    std::string alpha_range = "-2:2";
    std::string beta_range = "-2:2";
    double step = 0.5;
    std::string index = "dispersion";
    std::string out_path;
};

bool parse_range(const std::string& text, double& lo, double& hi) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) return false;
    try {
        std::size_t used = 0;
        lo = std::stod(text.substr(0, colon), &used);
        if (used != colon) return false;
        const std::string rest = text.substr(colon + 1);
        hi = std::stod(rest, &used);
        if (used != rest.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return lo <= hi;
}

int run_grid(const grid_args& args, std::ostream& out, std::ostream& err) {
    double a_lo = 0, a_hi = 0, b_lo = 0, b_hi = 0;
    if (!parse_range(args.alpha_range, a_lo, a_hi) ||
        !parse_range(args.beta_range, b_lo, b_hi)) {
        err << "error: ranges must be 'low:high' with low <= high\n";
        return exit_usage;
    }
    if (!(args.step > 0.0)) {
        err << "error: --step must be > 0\n";
        return exit_usage;
    }
    if (std::max(std::fabs(a_lo), std::fabs(a_hi)) > parameter_cap ||
        std::max(std::fabs(b_lo), std::fabs(b_hi)) > parameter_cap ||
        std::fabs(args.psi) > parameter_cap || args.n < 0) {
        err << "error: grid parameters outside the supported range\n";
        return exit_usage;
    }

    std::ostringstream csv;
    csv << "alpha,beta," << args.index << "\n" << std::setprecision(12);
    const double eps = args.step * 1e-9;
    for (double a = a_lo; a <= a_hi + eps; a += args.step) {
        for (double b = b_lo; b <= b_hi + eps; b += args.step) {
            const moment_set m = moments(params{args.n, a, b, args.psi});
            double value = 0.0;
            if (args.index == "dispersion") value = m.dispersion_index;
            else if (args.index == "skewness") value = m.skewness;
            else value = m.excess_kurtosis;
            csv << a << "," << b << "," << value << "\n";
        }
    }
    if (!args.out_path.empty()) {
        std::ofstream file(args.out_path);
        if (!file) {
            err << "error: cannot write '" << args.out_path << "'\n";
            return exit_data;
        }
        file << csv.str();
    } else {
        out << csv.str();
    }
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"bounded two-exponent count distribution toolkit"};
    app.require_subcommand(1);

    fit_args fa;
    CLI::App* fit = app.add_subcommand("fit", "fit a model to a frequency dataset");
    fit->add_option("dataset", fa.dataset,
                    "CSV path or bundled fixture (bacterial, saxony, linnet, trip)")
        ->required();
    fit->add_option("--model", fa.model, "model family")
        ->check(CLI::IsMember({"mcmpb", "cmpb", "bb", "nb", "cmp"}));
    fit->add_option("--n", fa.n, "support bound: integer or 'auto' (profile likelihood)");
    fit->add_flag("--truncated", fa.truncated, "treat the data as zero-truncated");
    fit->add_option("--out", fa.out_path, "write the JSON report here");

    simulate_args sa;
    CLI::App* simulate =
        app.add_subcommand("simulate", "simulate the birth-death queue and compare "
                                       "against its exact stationary law");
    simulate->add_option("--n", sa.n, "capacity")->check(CLI::PositiveNumber);
    simulate->add_option("--alpha", sa.alpha, "service exponent");
    simulate->add_option("--beta", sa.beta, "arrival exponent");
    simulate->add_option("--lambda", sa.lambda, "arrival rate scale")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--mu", sa.mu, "service rate scale")->check(CLI::PositiveNumber);
    simulate->add_option("--horizon", sa.horizon, "simulated time units")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sa.seed, "generator seed");
    simulate->add_option("--init", sa.init, "initial state (default 0)");

    pmf_args pa;
    CLI::App* pmf = app.add_subcommand("pmf", "print the pmf/cdf table");
    pmf->add_option("--n", pa.n, "support bound")->required();
    pmf->add_option("--alpha", pa.alpha, "exponent on x!");
    pmf->add_option("--beta", pa.beta, "exponent on (n-x)!");
    pmf->add_option("--psi", pa.psi, "log theta");
    pmf->add_flag("--reflect", pa.do_reflect, "print the reflected law (x -> n-x)");
    pmf->add_flag("--moments", pa.with_moments, "append moments and modality");

    grid_args ga;
    CLI::App* grid = app.add_subcommand(
        "grid", "emit a CSV grid of a distribution index over (alpha, beta)");
    grid->add_option("--n", ga.n, "support bound")->required();
    grid->add_option("--psi", ga.psi, "log theta");
    grid->add_option("--alpha-range", ga.alpha_range, "low:high");
    grid->add_option("--beta-range", ga.beta_range, "low:high");
    grid->add_option("--step", ga.step, "grid step");
    grid->add_option("--index", ga.index, "index to tabulate")
        ->check(CLI::IsMember({"dispersion", "skewness", "kurtosis"}));
    grid->add_option("--out", ga.out_path, "write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*fit) return run_fit(fa, out, err);
    if (*simulate) return run_simulate(sa, out, err);
    if (*pmf) return run_pmf(pa, out, err);
    if (*grid) return run_grid(ga, out, err);
    err << "error: no subcommand\n";
    return exit_usage;
}

}  // namespace mcmpb::cli
