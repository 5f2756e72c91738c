#include "polysemy/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace polysemy {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Json degree_rows(const PolysemySpectrum& observed,
                 const PolysemySpectrum& expected) {
    std::set<int> degrees;
    for (const auto& [k, n] : observed.counts) degrees.insert(k);
    for (const auto& [k, n] : expected.counts) degrees.insert(k);
    Json rows = Json::array();
    for (int k : degrees) {
        rows.push_back({{"k", k},
                        {"observed", observed.count_at(k)},
                        {"expected", expected.count_at(k)}});
    }
    return rows;
}

Json classes_json(const MergedClasses& classes) {
    Json out = Json::array();
    for (const auto& c : classes.classes) {
        out.push_back({{"degrees", c.degrees},
                       {"observed", c.observed},
                       {"expected", c.expected}});
    }
    return out;
}

Json gof_core(const GofReport& report, const PolysemySpectrum& observed) {
    Json out;
    out["totals"] = totals_json(report.fit.totals);
    out["fit"] = fit_json(report.fit);
    out["spectrum"] = degree_rows(observed, report.expected);
    out["classes"] = classes_json(report.classes);
    out["residual_class_below_threshold"] =
        report.classes.residual_below_threshold;
    out["chi_square"] = report.chi_square;
    out["dof"] = report.dof;
    out["p_value"] = report.p_value;
    out["fitted_param_count"] = report.fitted_param_count;
    out["policy"] = policy_json(report.policy);
    return out;
}

}  // namespace

Json totals_json(const DictionaryTotals& totals) {
    return {{"words", totals.words}, {"meanings", totals.meanings}};
}

Json fit_json(const ZipfFit& fit) {
    return {{"gamma", fit.gamma},
            {"k_const", fit.k_const},
            {"residual", fit.residual},
            {"iterations", fit.iterations}};
}

Json policy_json(const MergePolicy& policy) {
    Json joins = Json::array();
    for (const auto& join : policy.explicit_joins) {
        joins.push_back(std::vector<int>(join.begin(), join.end()));
    }
    Json out = {{"min_class_size", policy.min_class_size},
                {"explicit_joins", joins},
                {"exclude_degrees",
                 std::vector<int>(policy.exclude_degrees.begin(),
                                  policy.exclude_degrees.end())},
                {"merge_on_observed", policy.merge_on_observed}};
    if (policy.exclude_above) {
        out["exclude_above"] = *policy.exclude_above;
    } else {
        out["exclude_above"] = nullptr;
    }
    return out;
}

Json predict_report(const ZipfFit& fit, const PolysemySpectrum& predicted) {
    Json out;
    out["command"] = "predict";
    out["totals"] = totals_json(fit.totals);
    out["fit"] = fit_json(fit);
    Json rows = Json::array();
    for (const auto& [k, n] : predicted.counts) {
        rows.push_back({{"k", k}, {"expected", n}});
    }
    out["spectrum"] = rows;
    out["k_max"] = predicted.max_degree();
    return out;
}

Json test_report(const GofReport& report, const PolysemySpectrum& observed) {
    Json out;
    out["command"] = "test";
    out.update(gof_core(report, observed));
    return out;
}

Json lstar_report(const LstarFit& fit, const PolysemySpectrum& observed) {
    Json out;
    out["command"] = "fit-lstar";
    out["l_star"] = fit.l_star;
    out["modified_totals"] = totals_json(fit.modified_totals);
    out["at_search_boundary"] = fit.at_search_boundary;
    PolysemySpectrum adjusted = observed;
    adjusted.counts[1] = observed.count_at(1) +
                         static_cast<double>(fit.l_star) -
                         observed.total_words();
    out.update(gof_core(fit.report, adjusted));
    Json trace = Json::array();
    for (const auto& [candidate, value] : fit.objective_trace) {
        Json entry = {{"l_star", candidate}};
        if (std::isfinite(value)) {
            entry["objective"] = value;
        } else {
            entry["objective"] = nullptr;
        }
        trace.push_back(entry);
    }
    out["objective_trace"] = trace;
    return out;
}

Json simulate_report(const SimSummary& summary) {
    Json out;
    out["command"] = "simulate";
    out["totals"] = {{"words", summary.words}, {"meanings", summary.meanings}};
    out["seed"] = summary.seed;
    out["replicates"] = summary.replicates;
    Json rows = Json::array();
    for (const auto& [k, stats] : summary.degree_stats) {
        rows.push_back({{"k", k},
                        {"mean", stats.first},
                        {"stderr", stats.second},
                        {"expected", summary.predicted.count_at(k)}});
    }
    out["spectrum"] = rows;
    if (!summary.pvalues.empty()) {
        out["p_values"] = summary.pvalues;
    }
    return out;
}

std::string pretty_report(const Json& report) {
    std::ostringstream out;
    const std::string command = report.value("command", "");
    out << "== " << command << " ==\n";
    if (report.contains("totals")) {
        const auto& t = report["totals"];
        out << "totals: L = " << t["words"].get<std::int64_t>()
            << ", M = " << fmt(t["meanings"].get<double>()) << "\n";
    }
    if (report.contains("l_star")) {
        out << "L* = " << report["l_star"].get<std::int64_t>()
            << (report.value("at_search_boundary", false)
                    ? "  (at search boundary)\n"
                    : "\n");
    }
    if (report.contains("fit")) {
        const auto& f = report["fit"];
        out << "fit: gamma = " << fmt(f["gamma"].get<double>())
            << ", K = " << fmt(f["k_const"].get<double>())
            << ", residual = " << fmt(f["residual"].get<double>())
            << ", iterations = " << f["iterations"].get<int>() << "\n";
    }
    if (report.contains("spectrum")) {
        out << "\n";
        const bool has_observed = !report["spectrum"].empty() &&
                                  report["spectrum"][0].contains("observed");
        const bool has_mean = !report["spectrum"].empty() &&
                              report["spectrum"][0].contains("mean");
        if (has_mean) {
            out << "   k        mean      stderr    expected\n";
            for (const auto& row : report["spectrum"]) {
                char line[128];
                std::snprintf(line, sizeof(line), "%4d  %10.3f  %10.4f  %10.3f\n",
                              row["k"].get<int>(), row["mean"].get<double>(),
                              row["stderr"].get<double>(),
                              row["expected"].get<double>());
                out << line;
            }
        } else if (has_observed) {
            out << "   k    observed    expected\n";
            for (const auto& row : report["spectrum"]) {
                char line[128];
                std::snprintf(line, sizeof(line), "%4d  %10.0f  %10.3f\n",
                              row["k"].get<int>(), row["observed"].get<double>(),
                              row["expected"].get<double>());
                out << line;
            }
        } else {
            out << "   k    expected\n";
            for (const auto& row : report["spectrum"]) {
                char line[128];
                std::snprintf(line, sizeof(line), "%4d  %10.3f\n",
                              row["k"].get<int>(), row["expected"].get<double>());
                out << line;
            }
        }
    }
    if (report.contains("classes")) {
        out << "\nclasses (degrees: observed / expected):\n";
        for (const auto& c : report["classes"]) {
            out << "  {";
            bool first = true;
            for (const auto& d : c["degrees"]) {
                if (!first) out << ",";
                out << d.get<int>();
                first = false;
            }
            out << "}: " << fmt(c["observed"].get<double>()) << " / "
                << fmt(c["expected"].get<double>()) << "\n";
        }
    }
    if (report.contains("chi_square")) {
        out << "\nchi-square = " << fmt(report["chi_square"].get<double>())
            << ", dof = " << report["dof"].get<int>()
            << ", P = " << fmt(report["p_value"].get<double>()) << "\n";
    }
    if (report.contains("p_values")) {
        out << "\ncalibration p-values (" << report["p_values"].size() << "):";
        for (const auto& p : report["p_values"]) {
            out << " " << fmt(p.get<double>());
        }
        out << "\n";
    }
    return out.str();
}

std::string report_csv(const Json& report) {
    std::ostringstream out;
    if (!report.contains("spectrum")) return "";
    const auto& rows = report["spectrum"];
    const bool has_observed = !rows.empty() && rows[0].contains("observed");
    const bool has_mean = !rows.empty() && rows[0].contains("mean");
    char line[160];
    if (has_mean) {
        out << "k,mean,stderr,expected\n";
        for (const auto& row : rows) {
            std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g\n",
                          row["k"].get<int>(), row["mean"].get<double>(),
                          row["stderr"].get<double>(),
                          row["expected"].get<double>());
            out << line;
        }
    } else if (has_observed) {
        out << "k,observed,expected\n";
        for (const auto& row : rows) {
            std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n",
                          row["k"].get<int>(), row["observed"].get<double>(),
                          row["expected"].get<double>());
            out << line;
        }
    } else {
        out << "k,expected\n";
        for (const auto& row : rows) {
            std::snprintf(line, sizeof(line), "%d,%.17g\n", row["k"].get<int>(),
                          row["expected"].get<double>());
            out << line;
        }
    }
    return out.str();
}

}  // namespace polysemy
