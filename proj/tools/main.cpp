#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polysemy/errors.hpp"
#include "polysemy/gof.hpp"
#include "polysemy/io.hpp"
#include "polysemy/lstar.hpp"
#include "polysemy/model.hpp"
#include "polysemy/report.hpp"
#include "polysemy/simulate.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitNumerical = 5;

struct OutputOptions {
    bool pretty = false;
    std::string csv_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_flag("--pretty", opts.pretty, "human-readable table output");
    cmd->add_option("--emit-csv", opts.csv_path,
                    "write per-degree CSV rows to this path");
}

struct PolicyFlags {
    double merge_min = 10.0;
    std::vector<std::string> joins;
    std::vector<int> exclude_degrees;
    std::optional<int> exclude_above;
    bool merge_on_observed = false;
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
    cmd->add_option("--merge-min", flags.merge_min,
                    "minimum comparison class size")
        ->capture_default_str();
    cmd->add_option("--join", flags.joins,
                    "comma-separated degrees forced into one class "
                    "(repeatable), e.g. --join 8,9");
    cmd->add_option("--exclude-k", flags.exclude_degrees,
                    "degrees dropped from the comparison");
    cmd->add_option("--exclude-k-above", flags.exclude_above,
                    "drop degrees above this cutoff");
    cmd->add_flag("--merge-on-observed", flags.merge_on_observed,
                  "merge against observed instead of expected counts");
}

polysemy::MergePolicy build_policy(const PolicyFlags& flags) {
    polysemy::MergePolicy policy;
    policy.min_class_size = flags.merge_min;
    policy.merge_on_observed = flags.merge_on_observed;
    policy.exclude_degrees.insert(flags.exclude_degrees.begin(),
                                  flags.exclude_degrees.end());
    policy.exclude_above = flags.exclude_above;
    for (const std::string& join : flags.joins) {
        std::set<int> degrees;
        std::stringstream ss(join);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            try {
                degrees.insert(std::stoi(piece));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--join", "bad degree \"" + piece + "\"");
            }
        }
        if (degrees.size() < 2) {
            throw CLI::ValidationError("--join", "needs at least two degrees");
        }
        policy.explicit_joins.push_back(std::move(degrees));
    }
    return policy;
}

void emit(const polysemy::Json& report, const OutputOptions& opts) {
    if (!opts.csv_path.empty()) {
        std::ofstream csv(opts.csv_path, std::ios::binary);
        if (!csv) {
            throw polysemy::SpectrumParseError("cannot write CSV to " +
                                               opts.csv_path);
        }
        csv << polysemy::report_csv(report);
    }
    if (opts.pretty) {
        std::cout << polysemy::pretty_report(report);
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Parameter-free model of rank polysemy distributions: predict a "
        "dictionary's polysemy spectrum from its word and meaning totals, "
        "test it against empirical spectra, and fit the one-parameter L* "
        "fallback."};
    app.require_subcommand(1);

    // predict
    auto* predict = app.add_subcommand(
        "predict", "predict the theoretical spectrum from totals (L, M)");
    std::int64_t words = 0;
    double meanings = 0.0;
    std::optional<int> k_max;
    OutputOptions predict_out;
    predict->add_option("--words", words, "number of headwords L")->required();
    predict->add_option("--meanings", meanings, "total meanings M")->required();
    predict->add_option("--k-max", k_max,
                        "highest degree to report (default: auto truncation)");
    add_output_flags(predict, predict_out);

    // test
    auto* test = app.add_subcommand(
        "test", "chi-square comparison of an empirical spectrum to the model");
    std::string test_path;
    PolicyFlags test_policy;
    int fitted_params = 0;
    OutputOptions test_out;
    test->add_option("spectrum", test_path, "spectrum file (CSV/TSV or JSON)")
        ->required();
    add_policy_flags(test, test_policy);
    test->add_option("--fitted-params", fitted_params,
                     "parameters fitted from the spectrum (affects dof)")
        ->capture_default_str();
    add_output_flags(test, test_out);

    // fit-lstar
    auto* lstar = app.add_subcommand(
        "fit-lstar", "fit the one-parameter modified dictionary size L*");
    std::string lstar_path;
    PolicyFlags lstar_policy;
    std::int64_t search_lo = 0;
    std::int64_t search_hi = 0;
    std::string objective_name = "max-p";
    bool drop_degree_1 = false;
    OutputOptions lstar_out;
    lstar->add_option("spectrum", lstar_path, "spectrum file (CSV/TSV or JSON)")
        ->required();
    lstar->add_option("--search-lo", search_lo, "lowest L* candidate")
        ->required();
    lstar->add_option("--search-hi", search_hi, "highest L* candidate")
        ->required();
    lstar->add_option("--objective", objective_name,
                      "max-p or min-chi2")
        ->check(CLI::IsMember({"max-p", "min-chi2"}))
        ->capture_default_str();
    lstar->add_flag("--drop-degree-1", drop_degree_1,
                    "exclude the monosemous class from the comparison");
    add_policy_flags(lstar, lstar_policy);
    add_output_flags(lstar, lstar_out);

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "sample synthetic spectra from the fitted model");
    std::int64_t sim_words = 0;
    std::optional<double> sim_meanings;
    std::optional<double> sim_gamma;
    std::uint64_t seed = 1;
    int reps = 1;
    bool calibrate = false;
    PolicyFlags sim_policy;
    OutputOptions sim_out;
    simulate->add_option("--words", sim_words, "number of headwords L")
        ->required();
    auto* meanings_opt =
        simulate->add_option("--meanings", sim_meanings, "total meanings M");
    simulate->add_option("--gamma", sim_gamma, "Zipf exponent (alternative to --meanings)")
        ->excludes(meanings_opt);
    simulate->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    simulate->add_option("--reps", reps, "number of replicates")
        ->capture_default_str();
    simulate->add_flag("--calibrate", calibrate,
                       "run the chi-square protocol per replicate and report "
                       "the p-values");
    add_policy_flags(simulate, sim_policy);
    add_output_flags(simulate, sim_out);

    try {
        app.parse(argc, argv);

        if (predict->parsed()) {
            const polysemy::ZipfFit fit =
                polysemy::solve_parameters({words, meanings});
            const polysemy::PolysemySpectrum spectrum =
                polysemy::predicted_spectrum(fit, k_max);
            emit(polysemy::predict_report(fit, spectrum), predict_out);
        } else if (test->parsed()) {
            const polysemy::PolysemySpectrum observed =
                polysemy::parse_spectrum_file(test_path);
            const polysemy::GofReport report = polysemy::run_test(
                observed, build_policy(test_policy), fitted_params);
            emit(polysemy::test_report(report, observed), test_out);
        } else if (lstar->parsed()) {
            polysemy::PolysemySpectrum observed =
                polysemy::parse_spectrum_file(lstar_path);
            polysemy::LstarConfig config;
            config.search_lo = search_lo;
            config.search_hi = search_hi;
            config.policy = build_policy(lstar_policy);
            if (lstar_policy.exclude_above) {
                // The cutoff removes words from the data entirely, not just
                // from the class comparison.
                observed =
                    polysemy::apply_exclusion(observed, *lstar_policy.exclude_above);
                config.policy.exclude_above.reset();
            }
            if (drop_degree_1) config.policy.exclude_degrees.insert(1);
            config.objective = objective_name == "min-chi2"
                                   ? polysemy::LstarObjective::min_chi_square
                                   : polysemy::LstarObjective::max_p_value;
            const polysemy::LstarFit fit = polysemy::fit_lstar(observed, config);
            emit(polysemy::lstar_report(fit, observed), lstar_out);
        } else if (simulate->parsed()) {
            if (!sim_meanings && !sim_gamma) {
                throw CLI::RequiredError("--meanings or --gamma");
            }
            polysemy::ZipfFit fit;
            if (sim_meanings) {
                fit = polysemy::solve_parameters({sim_words, *sim_meanings});
            } else {
                fit.gamma = *sim_gamma;
                fit.k_const =
                    std::pow(static_cast<double>(sim_words), *sim_gamma);
                fit.totals.words = sim_words;
                fit.residual = 0.0;
                fit.iterations = 0;
                double total = 0.0;
                for (std::int64_t i = 1; i <= sim_words; ++i) {
                    total += polysemy::expected_meanings(
                        polysemy::rank_frequency(fit, i));
                }
                fit.totals.meanings = total;
            }
            polysemy::SimConfig config{seed, reps, fit};
            const auto replicates = polysemy::sample_spectrum(config);
            polysemy::SimSummary summary;
            summary.words = fit.totals.words;
            summary.meanings = fit.totals.meanings;
            summary.seed = seed;
            summary.replicates = reps;
            summary.predicted = polysemy::predicted_spectrum(fit);
            std::map<int, std::vector<double>> per_degree;
            for (const auto& spectrum : replicates) {
                for (const auto& [k, n] : spectrum.counts) {
                    (void)n;
                    per_degree[k];
                }
            }
            for (auto& [k, samples] : per_degree) {
                samples.reserve(replicates.size());
                for (const auto& spectrum : replicates) {
                    samples.push_back(spectrum.count_at(k));
                }
                const double n = static_cast<double>(samples.size());
                const double mean =
                    std::accumulate(samples.begin(), samples.end(), 0.0) / n;
                double var = 0.0;
                for (double s : samples) var += (s - mean) * (s - mean);
                var = n > 1 ? var / (n - 1.0) : 0.0;
                summary.degree_stats[k] = {mean, std::sqrt(var / n)};
            }
            if (calibrate) {
                summary.pvalues =
                    polysemy::calibrate_pvalues(config, build_policy(sim_policy));
            }
            emit(polysemy::simulate_report(summary), sim_out);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const polysemy::SpectrumParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const polysemy::InfeasibleError& e) {
        std::cerr << "error: " << e.what()
                  << " (the meanings total M must exceed the word count L)\n";
        return kExitInfeasible;
    } catch (const polysemy::InsufficientClassesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
