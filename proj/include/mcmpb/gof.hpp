// Goodness of fit: Pearson chi-square with small-expected-cell merging, and
// AIC.
#pragma once

#include <string>
#include <vector>

namespace mcmpb {

struct gof_summary {
    double chisq = 0.0;
    int df = 1;
    double p_value = 1.0;
    int cells = 0;            // cells remaining after merging
    bool df_floored = false;  // df fell below 1 and was floored
    std::string merged_cells; // human description of the merging applied

    bool operator==(const gof_summary&) const = default;
};

struct chisq_options {
    // Cells are merged until every expected count reaches this threshold:
    // first inward from both ends, then isolated small interior cells are
    // absorbed into the neighbor with the smaller expected count (ties to
    // the right).
    double merge_threshold = 5.0;
    // When set, sum(observed) and sum(expected) must agree within 0.5.
    // Fits over an unbounded support legitimately leave expected mass
    // outside the observed cells, and disable this.
    bool require_matched_totals = true;
};

// Pearson chi-square over merged cells; df = cells - 1 - k_params, floored
// at 1 with a warning flag; p-value from the chi-square upper tail.
gof_summary chisq_test(const std::vector<double>& observed,
                       const std::vector<double>& expected, int k_params,
                       const chisq_options& options = {});

// Akaike information criterion; k counts continuous ML parameters only.
double aic(double loglik, int k);

}  // namespace mcmpb
