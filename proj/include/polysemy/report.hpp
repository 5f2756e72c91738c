#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polysemy/gof.hpp"
#include "polysemy/lstar.hpp"
#include "polysemy/model.hpp"

namespace polysemy {

using Json = nlohmann::ordered_json;

/// Per-replicate summary of a simulation run.
struct SimSummary {
    std::int64_t words;
    double meanings;
    std::uint64_t seed;
    int replicates;
    // degree -> (mean count across replicates, standard error of the mean)
    std::map<int, std::pair<double, double>> degree_stats;
    PolysemySpectrum predicted;
    std::vector<double> pvalues;  // empty unless calibration ran
};

Json totals_json(const DictionaryTotals& totals);
Json fit_json(const ZipfFit& fit);
Json policy_json(const MergePolicy& policy);

Json predict_report(const ZipfFit& fit, const PolysemySpectrum& predicted);
Json test_report(const GofReport& report, const PolysemySpectrum& observed);
Json lstar_report(const LstarFit& fit, const PolysemySpectrum& observed);
Json simulate_report(const SimSummary& summary);

/// Aligned text rendering of any of the report forms above.
std::string pretty_report(const Json& report);

/// Per-degree CSV rows for plotting; columns depend on the report form.
std::string report_csv(const Json& report);

}  // namespace polysemy
