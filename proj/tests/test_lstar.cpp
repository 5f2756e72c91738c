#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "polysemy/errors.hpp"
#include "polysemy/lstar.hpp"
#include "polysemy/model.hpp"

using namespace polysemy;

namespace {

double forward_meanings(std::int64_t words, double gamma) {
    ZipfFit fit;
    fit.gamma = gamma;
    fit.k_const = std::pow(static_cast<double>(words), gamma);
    fit.totals.words = words;
    double sum = 0.0;
    for (std::int64_t i = 1; i <= words; ++i) {
        sum += expected_meanings(rank_frequency(fit, i));
    }
    return sum;
}

// Rounded spectrum of a planted model.
PolysemySpectrum planted_spectrum(std::int64_t words, double gamma) {
    ZipfFit fit;
    fit.gamma = gamma;
    fit.k_const = std::pow(static_cast<double>(words), gamma);
    fit.totals = {words, forward_meanings(words, gamma)};
    const PolysemySpectrum theory = predicted_spectrum(fit);
    PolysemySpectrum rounded;
    rounded.kind = SpectrumKind::empirical;
    for (const auto& [k, n] : theory.counts) {
        const double r = std::round(n);
        if (r > 0) rounded.counts[k] = r;
    }
    return rounded;
}

}  // namespace

TEST_CASE("apply_exclusion removes the high-polysemy tail") {
    PolysemySpectrum s;
    s.kind = SpectrumKind::empirical;
    s.counts = {{1, 100}, {2, 50}, {15, 3}};
    const PolysemySpectrum cut = apply_exclusion(s, 14);
    CHECK(cut.counts.size() == 2);
    CHECK(cut.total_words() == doctest::Approx(150.0));
    CHECK(cut.total_meanings() == doctest::Approx(200.0));
    CHECK(s.total_words() - cut.total_words() == doctest::Approx(3.0));
    CHECK(s.total_meanings() - cut.total_meanings() == doctest::Approx(45.0));

    // cutoff above the max degree is the identity
    const PolysemySpectrum same = apply_exclusion(s, 20);
    CHECK(same.counts == s.counts);

    CHECK_THROWS_AS(apply_exclusion(s, 0), std::domain_error);
    PolysemySpectrum high;
    high.counts = {{15, 3}};
    CHECK_THROWS_AS(apply_exclusion(high, 14), std::domain_error);
}

TEST_CASE("modified_totals applies the monosemous adjustment") {
    const DictionaryTotals adjusted =
        modified_totals({120000, 300000.0}, 157000);
    CHECK(adjusted.words == 157000);
    CHECK(adjusted.meanings == doctest::Approx(337000.0));

    const DictionaryTotals identity = modified_totals({120000, 300000.0}, 120000);
    CHECK(identity.words == 120000);
    CHECK(identity.meanings == doctest::Approx(300000.0));

    // the adjustment preserves M - L, so the boundary M = L stays infeasible
    // at every l_star
    CHECK_THROWS_AS(modified_totals({100, 100.0}, 50), InfeasibleError);
    CHECK_THROWS_AS(modified_totals({100, 100.0}, 200), InfeasibleError);
}

TEST_CASE("fit_lstar recovers a planted deflation") {
    const std::int64_t planted_words = 2000;
    PolysemySpectrum observed = planted_spectrum(planted_words, 1.0);
    observed.counts[1] -= 500;  // deflate the monosemous class

    LstarConfig config;
    config.search_lo =
        static_cast<std::int64_t>(observed.total_words() - observed.count_at(1)) +
        10;
    config.search_hi = 2 * planted_words;
    const LstarFit fit = fit_lstar(observed, config);
    CHECK(std::fabs(static_cast<double>(fit.l_star) - planted_words) <=
          0.05 * planted_words);
    CHECK(fit.modified_totals.words == fit.l_star);
    CHECK_FALSE(fit.at_search_boundary);
    CHECK(fit.report.fitted_param_count == 1);
    CHECK(fit.report.p_value ==
          doctest::Approx(p_value(fit.report.chi_square, fit.report.dof)));
    CHECK(!fit.objective_trace.empty());
}

TEST_CASE("fit_lstar identity perturbation stays near L_obs") {
    const PolysemySpectrum observed = planted_spectrum(1500, 1.0);
    const std::int64_t l_obs =
        static_cast<std::int64_t>(std::llround(observed.total_words()));
    LstarConfig config;
    config.search_lo = l_obs - 200;
    config.search_hi = l_obs + 200;
    const LstarFit fit = fit_lstar(observed, config);
    // integer rounding of the spectrum shifts the optimum a little
    CHECK(std::llabs(fit.l_star - l_obs) <= 64);

    // never worse than the unmodified point scored under the same dof
    // convention: L_obs is in the search set
    const GofReport baseline = run_test(observed, config.policy, 1);
    CHECK(fit.report.p_value >= baseline.p_value - 1e-9);
}

TEST_CASE("fit_lstar flags a truncated search range") {
    PolysemySpectrum observed = planted_spectrum(2000, 1.0);
    observed.counts[1] -= 500;
    const std::int64_t l_obs =
        static_cast<std::int64_t>(std::llround(observed.total_words()));
    LstarConfig config;
    // optimum (~2000) lies above this range
    config.search_lo = l_obs - 100;
    config.search_hi = l_obs + 100;
    const LstarFit fit = fit_lstar(observed, config);
    CHECK(fit.l_star == config.search_hi);
    CHECK(fit.at_search_boundary);
}

TEST_CASE("fit_lstar validates its search range") {
    const PolysemySpectrum observed = planted_spectrum(500, 1.0);
    LstarConfig config;
    config.search_lo = 600;
    config.search_hi = 600;
    CHECK_THROWS_AS(fit_lstar(observed, config), std::invalid_argument);
    config.search_lo = 1;
    config.search_hi = 1000;
    CHECK_THROWS_AS(fit_lstar(observed, config), std::invalid_argument);
}

TEST_CASE("fit_lstar objective trace is unimodal up to grid noise") {
    PolysemySpectrum observed = planted_spectrum(1200, 1.0);
    observed.counts[1] -= 300;
    LstarConfig config;
    config.search_lo =
        static_cast<std::int64_t>(observed.total_words() - observed.count_at(1)) +
        10;
    config.search_hi = 2400;
    const LstarFit fit = fit_lstar(observed, config);

    // over the coarse, sorted portion of the trace, count strict local minima
    // of the p-value between the ends; allow at most one (integer-grid noise)
    std::vector<std::pair<std::int64_t, double>> sorted(fit.objective_trace);
    std::sort(sorted.begin(), sorted.end());
    int dips = 0;
    for (size_t i = 1; i + 1 < sorted.size(); ++i) {
        if (std::isfinite(sorted[i].second) &&
            sorted[i].second < sorted[i - 1].second - 1e-12 &&
            sorted[i].second < sorted[i + 1].second - 1e-12) {
            ++dips;
        }
    }
    CHECK(dips <= 1);
}
