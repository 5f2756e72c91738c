#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <doctest.h>

#include "polysemy/model.hpp"
#include "polysemy/simulate.hpp"

using namespace polysemy;

namespace {

ZipfFit forward_fit(std::int64_t words, double gamma) {
    ZipfFit fit;
    fit.gamma = gamma;
    fit.k_const = std::pow(static_cast<double>(words), gamma);
    fit.totals.words = words;
    double sum = 0.0;
    for (std::int64_t i = 1; i <= words; ++i) {
        sum += expected_meanings(rank_frequency(fit, i));
    }
    fit.totals.meanings = sum;
    fit.residual = 0.0;
    fit.iterations = 0;
    return fit;
}

}  // namespace

TEST_CASE("degenerate fit samples only monosemous words") {
    ZipfFit flat;
    flat.gamma = 0.0;  // every rank has F = 1, hence m = 1
    flat.k_const = 1.0;
    flat.totals = {50, 50.0};
    const auto replicates = sample_spectrum({7, 3, flat});
    REQUIRE(replicates.size() == 3);
    for (const auto& spectrum : replicates) {
        REQUIRE(spectrum.counts.size() == 1);
        CHECK(spectrum.count_at(1) == 50.0);
    }
}

TEST_CASE("equal seeds give identical spectra") {
    const ZipfFit fit = forward_fit(300, 1.0);
    const auto a = sample_spectrum({42, 2, fit});
    const auto b = sample_spectrum({42, 2, fit});
    REQUIRE(a.size() == b.size());
    for (size_t r = 0; r < a.size(); ++r) {
        CHECK(a[r].counts == b[r].counts);
    }
    // different seed, different draw
    const auto c = sample_spectrum({43, 1, fit});
    CHECK(c[0].counts != a[0].counts);
}

TEST_CASE("every replicate holds exactly L words") {
    const ZipfFit fit = forward_fit(400, 1.2);
    for (const auto& spectrum : sample_spectrum({9, 5, fit})) {
        CHECK(spectrum.total_words() == 400.0);
    }
}

TEST_CASE("replicate means track the theoretical spectrum") {
    for (const auto& [words, gamma] :
         std::vector<std::pair<std::int64_t, double>>{
             {100, 0.8}, {500, 1.0}, {2000, 1.2}}) {
        const ZipfFit fit = forward_fit(words, gamma);
        const PolysemySpectrum theory = predicted_spectrum(fit);
        const int reps = 400;
        const auto replicates = sample_spectrum({1234, reps, fit});
        for (const auto& [k, expected] : theory.counts) {
            if (expected < 1.0) continue;
            double mean = 0.0;
            for (const auto& s : replicates) mean += s.count_at(k);
            mean /= reps;
            double var = 0.0;
            for (const auto& s : replicates) {
                var += (s.count_at(k) - mean) * (s.count_at(k) - mean);
            }
            var /= (reps - 1);
            const double se = std::sqrt(var / reps);
            CHECK(std::fabs(mean - expected) <= 3.0 * std::max(se, 1e-9) + 1e-9);
        }
    }
}

TEST_CASE("calibrate_pvalues basics") {
    const ZipfFit fit = forward_fit(1000, 1.0);
    const auto single = calibrate_pvalues({5, 1, fit}, {});
    REQUIRE(single.size() == 1);
    CHECK(single[0] >= 0.0);
    CHECK(single[0] <= 1.0);
}

TEST_CASE("calibration p-values are close to uniform") {
    const ZipfFit fit = forward_fit(5000, 1.0);
    auto pvalues = calibrate_pvalues({20250824, 200, fit}, {});
    std::sort(pvalues.begin(), pvalues.end());
    const int n = static_cast<int>(pvalues.size());
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        sup = std::max({sup, std::fabs(pvalues[i] - static_cast<double>(i) / n),
                        std::fabs(pvalues[i] - static_cast<double>(i + 1) / n)});
    }
    CHECK(sup <= 0.15);
}

TEST_CASE("perturbed spectra yield tiny p-values") {
    const ZipfFit fit = forward_fit(2000, 1.0);
    int rejected = 0;
    const int reps = 20;
    for (PolysemySpectrum spectrum : sample_spectrum({11, reps, fit})) {
        spectrum.counts[1] = std::round(spectrum.count_at(1) * 10.0);
        const GofReport report = run_test_against(spectrum, fit.totals, {});
        if (report.p_value < 0.01) ++rejected;
    }
    CHECK(rejected == reps);
}
