#include "polysemy/lstar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "polysemy/errors.hpp"

namespace polysemy {

PolysemySpectrum apply_exclusion(const PolysemySpectrum& observed, int cutoff) {
    if (cutoff < 1) {
        throw std::domain_error("apply_exclusion: cutoff must be >= 1");
    }
    PolysemySpectrum result;
    result.kind = observed.kind;
    for (const auto& [k, n] : observed.counts) {
        if (k <= cutoff) result.counts[k] = n;
    }
    if (result.counts.empty()) {
        throw std::domain_error("apply_exclusion: no degrees survive the cutoff");
    }
    return result;
}

DictionaryTotals modified_totals(const DictionaryTotals& observed_totals,
                                 std::int64_t l_star) {
    if (l_star < 1) {
        throw std::domain_error("modified_totals: l_star must be positive");
    }
    DictionaryTotals result;
    result.words = l_star;
    result.meanings = observed_totals.meanings +
                      static_cast<double>(l_star - observed_totals.words);
    if (!(result.meanings > static_cast<double>(result.words))) {
        throw InfeasibleError(
            "modified_totals: adjusted meanings total must exceed word total");
    }
    return result;
}

namespace {

struct CandidateEval {
    double objective;  // NaN on failure
    GofReport report;
    DictionaryTotals totals;
    bool ok = false;
};

class Search {
  public:
    Search(const PolysemySpectrum& observed, const LstarConfig& config)
        : observed_(observed),
          config_(config),
          l_obs_(static_cast<std::int64_t>(std::llround(observed.total_words()))),
          m_obs_(observed.total_meanings()) {}

    const CandidateEval& evaluate(std::int64_t l) {
        auto it = cache_.find(l);
        if (it != cache_.end()) return it->second;
        CandidateEval eval;
        eval.objective = std::numeric_limits<double>::quiet_NaN();
        try {
            eval.totals = modified_totals({l_obs_, m_obs_}, l);
            PolysemySpectrum adjusted = observed_;
            adjusted.counts[1] =
                observed_.count_at(1) + static_cast<double>(l - l_obs_);
            if (adjusted.counts[1] < 0.0) {
                throw InfeasibleError("negative monosemous count");
            }
            eval.report =
                run_test_against(adjusted, eval.totals, config_.policy, 1);
            eval.objective = config_.objective == LstarObjective::max_p_value
                                 ? eval.report.p_value
                                 : eval.report.chi_square;
            eval.ok = true;
        } catch (const std::exception&) {
            // recorded as NaN in the trace
        }
        trace_.emplace_back(l, eval.objective);
        return cache_.emplace(l, std::move(eval)).first->second;
    }

    // True when the candidate at `a` scores strictly better than at `b`;
    // ties (and NaNs on one side) resolve toward the smaller candidate.
    bool better(std::int64_t a, std::int64_t b) {
        const CandidateEval& ea = evaluate(a);
        const CandidateEval& eb = evaluate(b);
        if (!ea.ok) return false;
        if (!eb.ok) return true;
        if (config_.objective == LstarObjective::max_p_value) {
            if (ea.objective != eb.objective) return ea.objective > eb.objective;
        } else {
            if (ea.objective != eb.objective) return ea.objective < eb.objective;
        }
        return a < b;
    }

    std::int64_t l_obs() const { return l_obs_; }
    std::vector<std::pair<std::int64_t, double>> take_trace() {
        return std::move(trace_);
    }
    const CandidateEval& cached(std::int64_t l) { return cache_.at(l); }

  private:
    const PolysemySpectrum& observed_;
    const LstarConfig& config_;
    std::int64_t l_obs_;
    double m_obs_;
    std::map<std::int64_t, CandidateEval> cache_;
    std::vector<std::pair<std::int64_t, double>> trace_;
};

}  // namespace

LstarFit fit_lstar(const PolysemySpectrum& observed, const LstarConfig& config) {
    if (config.search_lo >= config.search_hi) {
        throw std::invalid_argument("fit_lstar: empty search range");
    }
    const double polysemous =
        observed.total_words() - observed.count_at(1);
    if (static_cast<double>(config.search_lo) <= polysemous) {
        throw std::invalid_argument(
            "fit_lstar: search_lo must exceed the polysemous word total");
    }

    Search search(observed, config);
    const std::int64_t lo = config.search_lo;
    const std::int64_t hi = config.search_hi;
    const std::int64_t span = hi - lo;

    // Coarse grid of at most 64 candidates, endpoints included, plus the
    // identity point L_obs when it lies in range.
    std::set<std::int64_t> grid;
    const int points = static_cast<int>(std::min<std::int64_t>(64, span + 1));
    for (int j = 0; j < points; ++j) {
        grid.insert(lo + (span * j) / (points - 1));
    }
    if (search.l_obs() >= lo && search.l_obs() <= hi) {
        grid.insert(search.l_obs());
    }

    std::vector<std::int64_t> ordered(grid.begin(), grid.end());
    std::int64_t best = ordered.front();
    for (std::int64_t candidate : ordered) {
        if (search.better(candidate, best)) best = candidate;
    }
    if (!search.cached(best).ok) {
        // best never improved past a failing first candidate; scan for any
        // finite one before giving up.
        for (std::int64_t candidate : ordered) {
            if (search.cached(candidate).ok) {
                best = candidate;
                break;
            }
        }
    }

    // Golden-section refinement between the grid neighbors of the best point.
    const auto pos = std::lower_bound(ordered.begin(), ordered.end(), best);
    std::int64_t a = (pos == ordered.begin()) ? *pos : *(pos - 1);
    std::int64_t b = (pos + 1 == ordered.end()) ? *pos : *(pos + 1);
    const double invphi = 0.6180339887498949;
    while (b - a > 2) {
        const std::int64_t step =
            static_cast<std::int64_t>(std::llround(invphi * (b - a)));
        std::int64_t x1 = b - step;
        std::int64_t x2 = a + step;
        if (x1 >= x2) {
            x1 = a + (b - a) / 2;
            x2 = x1 + 1;
        }
        if (search.better(x1, x2)) {
            b = x2;
        } else {
            a = x1;
        }
    }
    for (std::int64_t candidate = a; candidate <= b; ++candidate) {
        if (search.better(candidate, best)) best = candidate;
    }

    const CandidateEval& winner = search.cached(best);
    if (!winner.ok) {
        throw FitFailureError(
            "fit_lstar: objective not finite at any candidate");
    }
    LstarFit fit;
    fit.l_star = best;
    fit.modified_totals = winner.totals;
    fit.report = winner.report;
    fit.objective_trace = search.take_trace();
    fit.at_search_boundary = (best == lo || best == hi);
    return fit;
}

}  // namespace polysemy
