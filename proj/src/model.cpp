#include "polysemy/model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polysemy/errors.hpp"
#include "polysemy/numerics.hpp"

namespace polysemy {

double PolysemySpectrum::total_words() const {
    double sum = 0.0;
    for (const auto& [k, n] : counts) sum += n;
    return sum;
}

double PolysemySpectrum::total_meanings() const {
    double sum = 0.0;
    for (const auto& [k, n] : counts) sum += static_cast<double>(k) * n;
    return sum;
}

int PolysemySpectrum::max_degree() const {
    return counts.empty() ? 0 : counts.rbegin()->first;
}

double PolysemySpectrum::count_at(int k) const {
    auto it = counts.find(k);
    return it == counts.end() ? 0.0 : it->second;
}

double rank_frequency(const ZipfFit& fit, std::int64_t rank) {
    if (rank < 1 || rank > fit.totals.words) {
        throw std::domain_error("rank_frequency: rank outside [1, L]");
    }
    return fit.k_const / std::pow(static_cast<double>(rank), fit.gamma);
}

double expected_meanings(double frequency) {
    if (!(frequency >= 0.0)) {
        throw std::domain_error("expected_meanings: frequency must be >= 0");
    }
    return digamma(frequency + 1.0) + kEulerMascheroni;
}

namespace {

// sum_{i=1..L} [psi((L/i)^gamma + 1) + C], ascending i for reproducibility.
double meanings_sum(std::int64_t words, double gamma) {
    const double l = static_cast<double>(words);
    double sum = 0.0;
    for (std::int64_t i = 1; i <= words; ++i) {
        const double freq = std::pow(l / static_cast<double>(i), gamma);
        sum += digamma(freq + 1.0) + kEulerMascheroni;
    }
    return sum;
}

}  // namespace

ZipfFit solve_parameters(const DictionaryTotals& totals, double tol) {
    if (totals.words < 2) {
        throw InfeasibleError("solve_parameters: need at least 2 words");
    }
    if (!(totals.meanings > static_cast<double>(totals.words))) {
        throw InfeasibleError(
            "solve_parameters: meanings total must exceed word total");
    }
    const auto residual_fn = [&](double gamma) {
        return meanings_sum(totals.words, gamma) - totals.meanings;
    };

    // g(0+) = L - M < 0; find an upper end with g > 0.
    double lo = 1e-6;
    double hi = 4.0;
    if (residual_fn(lo) >= 0.0) {
        // Root sits below 1e-6; gamma = 0 is a valid lower endpoint
        // (all frequencies collapse to 1, g(0) = L - M < 0).
        hi = lo;
        lo = 0.0;
    } else {
        while (residual_fn(hi) < 0.0) {
            hi *= 2.0;
            if (hi > 64.0) {
                throw BracketError(
                    "solve_parameters: no solution with gamma <= 64");
            }
        }
    }

    const RootResult r =
        find_root(residual_fn, {lo, hi}, tol * totals.meanings);
    ZipfFit fit;
    fit.gamma = r.root;
    fit.k_const = std::pow(static_cast<double>(totals.words), r.root);
    fit.totals = totals;
    fit.residual = std::fabs(r.f_root);
    fit.iterations = r.iterations;
    return fit;
}

double polysemy_pmf(double mean_meanings, int k) {
    if (!(mean_meanings >= 1.0)) {
        throw std::domain_error("polysemy_pmf: mean must be >= 1");
    }
    if (k < 1) {
        throw std::domain_error("polysemy_pmf: degree must be >= 1");
    }
    if (mean_meanings == 1.0) {
        return k == 1 ? 1.0 : 0.0;
    }
    // (m-1)^{k-1} / m^k computed through the ratio, which stays in range
    // for large k.
    const double m = mean_meanings;
    return std::pow((m - 1.0) / m, k - 1) / m;
}

PolysemySpectrum predicted_spectrum(const ZipfFit& fit,
                                    std::optional<int> k_max) {
    const std::int64_t words = fit.totals.words;
    const double l = static_cast<double>(words);

    std::vector<double> ratio(words);    // (m-1)/m per rank
    std::vector<double> term(words);     // current p_k per rank
    for (std::int64_t i = 1; i <= words; ++i) {
        const double freq = fit.k_const / std::pow(static_cast<double>(i), fit.gamma);
        const double m = expected_meanings(freq);
        const double safe_m = std::max(m, 1.0);  // guard rounding below 1 at rank L
        ratio[i - 1] = (safe_m - 1.0) / safe_m;
        term[i - 1] = 1.0 / safe_m;              // p_1
    }

    PolysemySpectrum spectrum;
    spectrum.kind = SpectrumKind::theoretical;
    const double tail_tol = 1e-6 * l;
    const int hard_cap = 100000;
    for (int k = 1; k <= hard_cap; ++k) {
        double n_k = 0.0;
        double tail = 0.0;  // mass beyond degree k
        for (std::int64_t i = 0; i < words; ++i) {
            n_k += term[i];
            term[i] *= ratio[i];
        }
        spectrum.counts[k] = n_k;
        if (k_max) {
            if (k >= *k_max) break;
            continue;
        }
        // Per-rank geometric tails in closed form: past degree k the word
        // mass is r^k and the meaning mass is r^k * (k + m), with
        // r = (m-1)/m. term[i] currently holds p_{k+1} = r^k / m.
        double meaning_tail = 0.0;
        for (std::int64_t i = 0; i < words; ++i) {
            if (ratio[i] >= 1.0) continue;
            const double m_i = 1.0 / (1.0 - ratio[i]);
            const double word_mass = term[i] * m_i;  // r^k
            tail += word_mass;
            meaning_tail += word_mass * (static_cast<double>(k) + m_i);
        }
        if (tail < tail_tol &&
            meaning_tail < 1e-6 * fit.totals.meanings) {
            break;
        }
    }
    return spectrum;
}

}  // namespace polysemy
