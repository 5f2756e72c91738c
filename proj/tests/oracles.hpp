// Independent oracles for the test suite. Nothing here calls into the
// library under test; disagreements point at the implementation.
#pragma once

#include <cmath>
#include <map>
#include <vector>

namespace oracles {

// H_n summed small-terms-first.
inline double harmonic(int n) {
    double sum = 0.0;
    for (int j = n; j >= 1; --j) sum += 1.0 / j;
    return sum;
}

// Digamma by its own recurrence/asymptotic split (shift to >= 20, series
// through x^-10), written independently of the library implementation.
inline double digamma(double x) {
    double acc = 0.0;
    while (x < 20.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double w = 1.0 / (x * x);
    double series = 0.0;
    const double b[] = {1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
                        1.0 / 132.0};
    double p = w;
    for (double coeff : b) {
        series += coeff * p;
        p *= w;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

// Maclaurin series for erf, adequate for |z| <= 6.
inline double erf_series(double z) {
    const double two_over_sqrt_pi = 1.1283791670955126;
    double term = z;
    double sum = z;
    for (int n = 1; n < 200; ++n) {
        term *= -z * z / n;
        sum += term / (2 * n + 1);
        if (std::fabs(term) < 1e-18) break;
    }
    return two_over_sqrt_pi * sum;
}

inline double normal_cdf(double z) {
    return 0.5 * (1.0 + erf_series(z / std::sqrt(2.0)));
}

// Chi-square upper tail for df = 1: P = 2 * (1 - Phi(sqrt(stat))).
inline double chi2_upper_tail_df1(double stat) {
    return 2.0 * (1.0 - normal_cdf(std::sqrt(stat)));
}

// Naive re-implementation of the theoretical spectrum: direct loops over
// ranks and degrees with no shared code.
inline std::map<int, double> brute_spectrum(long long words, double gamma,
                                            int k_max) {
    std::map<int, double> spectrum;
    for (int k = 1; k <= k_max; ++k) {
        double n_k = 0.0;
        for (long long i = 1; i <= words; ++i) {
            const double freq =
                std::pow(static_cast<double>(words) / static_cast<double>(i),
                         gamma);
            const double m = digamma(freq + 1.0) + 0.5772156649015329;
            if (m <= 1.0) {
                n_k += (k == 1) ? 1.0 : 0.0;
            } else {
                n_k += std::pow(m - 1.0, k - 1) / std::pow(m, k);
            }
        }
        spectrum[k] = n_k;
    }
    return spectrum;
}

}  // namespace oracles
