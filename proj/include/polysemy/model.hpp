#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace polysemy {

/// The two observables driving the parameter-free model.
struct DictionaryTotals {
    std::int64_t words;    // L, number of headwords
    double meanings;       // M, total dictionary meanings (real-valued)
};

/// Solved model parameters with solver diagnostics.
struct ZipfFit {
    double gamma;              // Zipf exponent
    double k_const;            // K = L^gamma
    DictionaryTotals totals;
    double residual;           // |sum m_F - M| at the solution
    int iterations;
};

enum class SpectrumKind { empirical, theoretical };

/// Counts of words per polysemy degree k. Empirical counts are integers
/// stored as reals; theoretical counts are reals.
struct PolysemySpectrum {
    std::map<int, double> counts;  // degree k >= 1 -> count
    SpectrumKind kind = SpectrumKind::empirical;

    double total_words() const;
    double total_meanings() const;  // sum of k * count
    int max_degree() const;         // 0 for an empty spectrum
    double count_at(int k) const;
};

/// F = K / i^gamma for rank i in [1, L]. Throws std::domain_error for a rank
/// outside that range.
double rank_frequency(const ZipfFit& fit, std::int64_t rank);

/// Expected number of dictionary meanings for a word of frequency F:
/// m_F = psi(F + 1) + C. Throws std::domain_error for F < 0.
double expected_meanings(double frequency);

/// Solves the normalization system for (K, gamma). K is eliminated via
/// K = L^gamma, leaving the monotone scalar equation
///   g(gamma) = sum_{i=1..L} [psi((L/i)^gamma + 1) + C] - M = 0.
/// Throws InfeasibleError when M <= L, BracketError when the bracket
/// expansion exceeds gamma = 64.
ZipfFit solve_parameters(const DictionaryTotals& totals, double tol = 1e-10);

/// Geometric polysemy pmf p_k = (m-1)^{k-1} / m^k for m >= 1, k >= 1.
/// Throws std::domain_error for m < 1.
double polysemy_pmf(double mean_meanings, int k);

/// Theoretical spectrum N_k = sum over ranks of p_k(m_{F_i}). With no
/// explicit k_max the degree range extends until the truncated tail mass
/// drops below 1e-6 * L.
PolysemySpectrum predicted_spectrum(const ZipfFit& fit,
                                    std::optional<int> k_max = std::nullopt);

}  // namespace polysemy
