#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polysemy/gof.hpp"
#include "polysemy/model.hpp"

namespace polysemy {

enum class LstarObjective { max_p_value, min_chi_square };

/// Search configuration for the one-parameter fallback. The policy is
/// typically the published protocol: exclude_above = 14, optionally degree 1
/// excluded from the comparison.
struct LstarConfig {
    std::int64_t search_lo;
    std::int64_t search_hi;
    MergePolicy policy;
    LstarObjective objective = LstarObjective::max_p_value;
};

struct LstarFit {
    std::int64_t l_star;
    DictionaryTotals modified_totals;
    GofReport report;  // fitted_param_count = 1
    // (candidate, objective value) in evaluation order; NaN marks candidates
    // whose evaluation failed.
    std::vector<std::pair<std::int64_t, double>> objective_trace;
    bool at_search_boundary = false;
};

/// Removes all degrees k > cutoff from an empirical spectrum; totals of the
/// result follow from the surviving degrees. Throws std::domain_error when
/// nothing survives.
PolysemySpectrum apply_exclusion(const PolysemySpectrum& observed, int cutoff);

/// Monosemous-area adjustment: L = l_star, M = M_obs + (l_star - L_obs).
/// Every added or removed word carries exactly one meaning. Throws
/// InfeasibleError when the adjusted totals satisfy M <= L.
DictionaryTotals modified_totals(const DictionaryTotals& observed_totals,
                                 std::int64_t l_star);

/// Integer search for L*: coarse grid of at most 64 candidates, then
/// golden-section refinement on the best bracket. Each candidate adjusts the
/// empirical degree-1 count by (L* - L_obs), solves the model on the
/// modified totals, and scores the chi-square comparison with
/// fitted_param_count = 1. Ties break toward smaller L*.
LstarFit fit_lstar(const PolysemySpectrum& observed, const LstarConfig& config);

}  // namespace polysemy
