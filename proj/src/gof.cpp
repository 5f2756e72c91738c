#include "polysemy/gof.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "polysemy/errors.hpp"
#include "polysemy/numerics.hpp"

namespace polysemy {

namespace {

bool retained(int k, const MergePolicy& policy) {
    if (policy.exclude_degrees.count(k)) return false;
    if (policy.exclude_above && k > *policy.exclude_above) return false;
    return true;
}

struct Unit {
    std::vector<int> degrees;
    double observed = 0.0;
    double expected = 0.0;
    int max_degree() const { return degrees.back(); }
};

}  // namespace

MergedClasses merge_classes(const PolysemySpectrum& observed,
                            const PolysemySpectrum& expected,
                            const MergePolicy& policy) {
    std::map<int, Unit> units;  // keyed by max degree of the unit
    for (const auto* spectrum : {&observed, &expected}) {
        for (const auto& [k, n] : spectrum->counts) {
            (void)n;
            if (retained(k, policy) && !units.count(k)) {
                units[k] = Unit{{k},
                                observed.count_at(k),
                                expected.count_at(k)};
            }
        }
    }
    // Fold each explicit join into the unit keyed by the join's max degree.
    for (const auto& join : policy.explicit_joins) {
        std::vector<int> members;
        for (int k : join) {
            if (units.count(k)) members.push_back(k);
        }
        if (members.size() < 2) continue;
        const int anchor = *std::max_element(members.begin(), members.end());
        Unit merged;
        for (int k : members) {
            Unit& u = units.at(k);
            merged.degrees.insert(merged.degrees.end(), u.degrees.begin(),
                                  u.degrees.end());
            merged.observed += u.observed;
            merged.expected += u.expected;
            units.erase(k);
        }
        std::sort(merged.degrees.begin(), merged.degrees.end());
        units[anchor] = std::move(merged);
    }

    // Tail-first accumulation: walk units from the highest degree downward,
    // closing a class once its size reaches the threshold.
    MergedClasses result;
    MergedClass open;
    for (auto it = units.rbegin(); it != units.rend(); ++it) {
        const Unit& u = it->second;
        open.degrees.insert(open.degrees.end(), u.degrees.begin(),
                            u.degrees.end());
        open.observed += u.observed;
        open.expected += u.expected;
        const double size =
            policy.merge_on_observed ? open.observed : open.expected;
        if (size >= policy.min_class_size) {
            std::sort(open.degrees.begin(), open.degrees.end());
            result.classes.push_back(std::move(open));
            open = MergedClass{};
        }
    }
    if (!open.degrees.empty()) {
        std::sort(open.degrees.begin(), open.degrees.end());
        if (result.classes.empty()) {
            result.classes.push_back(std::move(open));
            result.residual_below_threshold = true;
        } else {
            MergedClass& last = result.classes.back();
            last.degrees.insert(last.degrees.begin(), open.degrees.begin(),
                                open.degrees.end());
            last.observed += open.observed;
            last.expected += open.expected;
        }
    }
    std::reverse(result.classes.begin(), result.classes.end());

    if (result.classes.size() < 2) {
        throw InsufficientClassesError(
            "merge_classes: fewer than 2 classes after merging");
    }
    return result;
}

double chi_square_statistic(const MergedClasses& classes) {
    double stat = 0.0;
    for (const auto& c : classes.classes) {
        if (!(c.expected > 0.0)) {
            throw std::domain_error(
                "chi_square_statistic: class with non-positive expected count");
        }
        const double diff = c.observed - c.expected;
        stat += diff * diff / c.expected;
    }
    return stat;
}

double p_value(double stat, int dof) {
    if (!(stat >= 0.0) || dof < 1) {
        throw std::domain_error("p_value: requires stat >= 0 and dof >= 1");
    }
    return regularized_gamma_q(0.5 * dof, 0.5 * stat);
}

namespace {

GofReport run_merged(const PolysemySpectrum& observed,
                     const DictionaryTotals& totals, const MergePolicy& policy,
                     int fitted_param_count) {
    GofReport report;
    report.policy = policy;
    report.fitted_param_count = fitted_param_count;
    report.fit = solve_parameters(totals);

    PolysemySpectrum expected = predicted_spectrum(report.fit);
    // Observed degrees past the auto truncation get their (tiny) theoretical
    // counts computed rather than an expected of zero.
    int needed = 0;
    for (const auto& [k, n] : observed.counts) {
        (void)n;
        if (retained(k, policy)) needed = std::max(needed, k);
    }
    if (needed > expected.max_degree()) {
        expected = predicted_spectrum(report.fit, needed);
    }
    report.expected = std::move(expected);

    report.classes = merge_classes(observed, report.expected, policy);
    const int dof =
        static_cast<int>(report.classes.classes.size()) - 1 - fitted_param_count;
    if (dof < 1) {
        throw InsufficientClassesError(
            "run_test: not enough classes for the requested parameter count");
    }
    report.chi_square = chi_square_statistic(report.classes);
    report.dof = dof;
    report.p_value = p_value(report.chi_square, dof);
    return report;
}

}  // namespace

GofReport run_test(const PolysemySpectrum& observed, const MergePolicy& policy,
                   int fitted_param_count) {
    DictionaryTotals totals{0, 0.0};
    for (const auto& [k, n] : observed.counts) {
        if (!retained(k, policy)) continue;
        totals.words += static_cast<std::int64_t>(std::llround(n));
        totals.meanings += static_cast<double>(k) * n;
    }
    return run_merged(observed, totals, policy, fitted_param_count);
}

GofReport run_test_against(const PolysemySpectrum& observed,
                           const DictionaryTotals& totals,
                           const MergePolicy& policy, int fitted_param_count) {
    return run_merged(observed, totals, policy, fitted_param_count);
}

}  // namespace polysemy
