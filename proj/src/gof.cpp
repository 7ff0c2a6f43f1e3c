#include "mcmpb/gof.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mcmpb/numeric.hpp"

namespace mcmpb {

gof_summary chisq_test(const std::vector<double>& observed,
                       const std::vector<double>& expected, int k_params,
                       const chisq_options& options) {
    if (observed.size() != expected.size())
        throw std::invalid_argument("chisq_test: observed/expected length mismatch");
    if (observed.empty()) throw std::invalid_argument("chisq_test: no cells");
    if (k_params < 0) throw std::invalid_argument("chisq_test: k_params must be >= 0");
    double obs_total = 0.0, exp_total = 0.0;
    for (double o : observed) obs_total += o;
    for (double e : expected) {
        if (!(e >= 0.0) || !std::isfinite(e))
            throw std::invalid_argument("chisq_test: expected counts must be finite and >= 0");
        exp_total += e;
    }
    if (options.require_matched_totals && std::fabs(obs_total - exp_total) > 0.5)
        throw std::invalid_argument("chisq_test: observed and expected totals differ");

    std::vector<double> o = observed;
    std::vector<double> e = expected;
    const double threshold = options.merge_threshold;

    // End merging: collapse inward until both end cells reach the threshold.
    std::size_t lo = 0, hi = e.size() - 1;
    while (lo < hi && e[lo] < threshold) {
        e[lo + 1] += e[lo];
        o[lo + 1] += o[lo];
        ++lo;
    }
    while (hi > lo && e[hi] < threshold) {
        e[hi - 1] += e[hi];
        o[hi - 1] += o[hi];
        --hi;
    }
    o.assign(o.begin() + static_cast<std::ptrdiff_t>(lo),
             o.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    e.assign(e.begin() + static_cast<std::ptrdiff_t>(lo),
             e.begin() + static_cast<std::ptrdiff_t>(hi) + 1);

    // Interior absorption: fold each remaining small cell into the neighbor
    // with the smaller expected count (ties toward the right), re-scanning
    // from the left after every fold.
    bool changed = true;
    while (changed && e.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= threshold) continue;
            std::size_t j;
            if (i == 0) j = 1;
            else if (i == e.size() - 1) j = i - 1;
            else j = (e[i - 1] < e[i + 1]) ? i - 1 : i + 1;
            e[j] += e[i];
            o[j] += o[i];
            e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
            o.erase(o.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
        }
    }

    gof_summary out;
    out.cells = static_cast<int>(e.size());
    double stat = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!(e[i] > 0.0))
            throw std::invalid_argument("chisq_test: merged expected cell is zero");
        const double d = o[i] - e[i];
        stat += d * d / e[i];
    }
    out.chisq = stat;
    int df = out.cells - 1 - k_params;
    if (df < 1) {
        df = 1;
        out.df_floored = true;
    }
    out.df = df;
    out.p_value = chi_square_upper_tail(stat, df);

    std::ostringstream desc;
    desc << observed.size() << " cells -> " << out.cells
         << " after merging at expected >= " << threshold;
    if (out.df_floored) desc << "; df floored at 1";
    out.merged_cells = desc.str();
    return out;
}

double aic(double loglik, int k) {
    if (k < 1) throw std::invalid_argument("aic: k must be >= 1");
    return -2.0 * loglik + 2.0 * static_cast<double>(k);
}

}  // namespace mcmpb
