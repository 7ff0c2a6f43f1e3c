"""Bounded two-exponent count distribution toolkit."""

from ._mcmpb import (
    FrequencyData,
    Params,
    cdf_table,
    chisq_test,
    classify_modality,
    cmp_log_norm,
    cmp_pmf,
    cmpb_pmf,
    conditional_given_sum,
    fit_bb,
    fit_cmp,
    fit_cmpb,
    fit_fixed_n,
    fit_nb,
    fit_profile_n,
    fixture_names,
    is_log_concave,
    load_fixture,
    log_likelihood,
    log_pmf,
    moments,
    parse_dataset,
    pmf_table,
    power_bias,
    reflect,
    sample,
    simulate_queue,
    stationary_exact,
    stein_residual,
    truncated_cmp_pmf,
)

__all__ = [
    "FrequencyData",
    "Params",
    "cdf_table",
    "chisq_test",
    "classify_modality",
    "cmp_log_norm",
    "cmp_pmf",
    "cmpb_pmf",
    "conditional_given_sum",
    "fit_bb",
    "fit_cmp",
    "fit_cmpb",
    "fit_fixed_n",
    "fit_nb",
    "fit_profile_n",
    "fixture_names",
    "is_log_concave",
    "load_fixture",
    "log_likelihood",
    "log_pmf",
    "moments",
    "parse_dataset",
    "pmf_table",
    "power_bias",
    "reflect",
    "sample",
    "simulate_queue",
    "stationary_exact",
    "stein_residual",
    "truncated_cmp_pmf",
]
