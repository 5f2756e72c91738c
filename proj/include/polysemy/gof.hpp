#pragma once

#include <optional>
#include <set>
#include <vector>

#include "polysemy/model.hpp"

namespace polysemy {

/// Class construction rules for the chi-square comparison.
struct MergePolicy {
    double min_class_size = 10.0;
    std::vector<std::set<int>> explicit_joins;  // degree sets forced into one class
    std::set<int> exclude_degrees;
    std::optional<int> exclude_above;           // drop degrees k > cutoff
    bool merge_on_observed = false;             // threshold against observed counts
};

struct MergedClass {
    std::vector<int> degrees;  // ascending
    double observed = 0.0;
    double expected = 0.0;
};

/// A partition of the retained degrees into comparison classes, low k first.
struct MergedClasses {
    std::vector<MergedClass> classes;
    // True when everything collapsed into a single class that still sits
    // below the size threshold.
    bool residual_below_threshold = false;
};

struct GofReport {
    double chi_square;
    int dof;
    double p_value;
    MergedClasses classes;
    MergePolicy policy;
    int fitted_param_count;
    ZipfFit fit;
    PolysemySpectrum expected;  // the theoretical spectrum used
};

/// Drops excluded degrees, applies explicit joins, then accumulates degrees
/// from the highest k downward until each class reaches min_class_size (by
/// expected count unless policy.merge_on_observed). A final undersized
/// accumulation merges into the previously closed class. Throws
/// InsufficientClassesError when fewer than 2 classes remain.
MergedClasses merge_classes(const PolysemySpectrum& observed,
                            const PolysemySpectrum& expected,
                            const MergePolicy& policy);

/// Pearson statistic sum (O - E)^2 / E over the classes. Throws
/// std::domain_error when any class has expected <= 0.
double chi_square_statistic(const MergedClasses& classes);

/// Upper-tail chi-square probability Q(dof/2, stat/2).
double p_value(double stat, int dof);

/// Full protocol: derive totals (L, M) from the observed spectrum after
/// policy exclusions, solve the model, build the theoretical spectrum, merge
/// and compare. dof = classes - 1 - fitted_param_count.
GofReport run_test(const PolysemySpectrum& observed, const MergePolicy& policy,
                   int fitted_param_count = 0);

/// Same pipeline but the model is solved from explicitly supplied totals;
/// policy exclusions then restrict only the class comparison.
GofReport run_test_against(const PolysemySpectrum& observed,
                           const DictionaryTotals& totals,
                           const MergePolicy& policy,
                           int fitted_param_count = 0);

}  // namespace polysemy
