#include "polysemy/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "polysemy/numerics.hpp"

namespace polysemy {

std::vector<PolysemySpectrum> sample_spectrum(const SimConfig& config) {
    if (config.replicates < 1) {
        throw std::domain_error("sample_spectrum: replicates must be >= 1");
    }
    const std::int64_t words = config.fit.totals.words;

    // Per-rank mean meanings, shared across replicates.
    std::vector<double> log_ratio(words);  // log((m-1)/m), 0 marks m == 1
    for (std::int64_t i = 1; i <= words; ++i) {
        const double freq =
            config.fit.k_const / std::pow(static_cast<double>(i), config.fit.gamma);
        const double m = expected_meanings(freq);
        log_ratio[i - 1] = m > 1.0 ? std::log((m - 1.0) / m) : 0.0;
    }

    std::vector<PolysemySpectrum> replicates;
    replicates.reserve(config.replicates);
    for (int r = 0; r < config.replicates; ++r) {
        SplitMix64 rng(config.seed + static_cast<std::uint64_t>(r));
        PolysemySpectrum spectrum;
        spectrum.kind = SpectrumKind::empirical;
        for (std::int64_t i = 0; i < words; ++i) {
            int k = 1;
            if (log_ratio[i] < 0.0) {
                const double u = rng.uniform();
                k = 1 + static_cast<int>(std::floor(std::log(u) / log_ratio[i]));
            }
            spectrum.counts[k] += 1.0;
        }
        replicates.push_back(std::move(spectrum));
    }
    return replicates;
}

std::vector<double> calibrate_pvalues(const SimConfig& config,
                                      const MergePolicy& policy) {
    std::vector<double> pvalues;
    pvalues.reserve(config.replicates);
    for (const PolysemySpectrum& spectrum : sample_spectrum(config)) {
        const GofReport report =
            run_test_against(spectrum, config.fit.totals, policy, 0);
        pvalues.push_back(report.p_value);
    }
    return pvalues;
}

}  // namespace polysemy
