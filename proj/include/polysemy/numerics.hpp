#pragma once

#include <functional>

namespace polysemy {

/// Euler-Mascheroni constant C = lim (H_n - ln n).
inline constexpr double kEulerMascheroni = 0.5772156649015329;

inline double euler_mascheroni() { return kEulerMascheroni; }

/// Digamma function psi(x) for x > 0. Upward recurrence shifts the argument
/// into the asymptotic regime, then the 1/x^2 series through x^-12 is summed.
/// Throws std::domain_error for x <= 0.
double digamma(double x);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s),
/// s > 0, x >= 0. Series for x < s + 1, Lentz continued fraction otherwise.
/// Throws std::domain_error outside the domain.
double regularized_gamma_q(double s, double x);

/// A sign-changing interval for find_root. Requires lo < hi.
struct Bracket {
    double lo;
    double hi;
};

struct RootResult {
    double root;
    double f_root;      // residual f(root)
    int iterations;     // function evaluations beyond the two endpoints
};

/// Brent-style scalar root find on a monotone (or at least sign-changing)
/// function. Stops when |f(x)| <= f_tol or the bracket width falls below
/// 1e-14 * max(1, |x|). Throws BracketError when f(lo) and f(hi) share a
/// sign. Deterministic: identical inputs give bit-identical results.
RootResult find_root(const std::function<double(double)>& f, Bracket bracket,
                     double f_tol);

}  // namespace polysemy
