#include "polysemy/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polysemy/errors.hpp"

namespace polysemy {

double digamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("digamma: argument must be positive");
    }
    // Shift well past the series' validity edge so the x^-12 truncation is
    // below 1e-13 absolute.
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number series: psi(x) ~ ln x - 1/(2x) - sum B_2n / (2n x^2n).
    const double series =
        inv2 * (1.0 / 12.0 +
                inv2 * (-1.0 / 120.0 +
                        inv2 * (1.0 / 252.0 +
                                inv2 * (-1.0 / 240.0 +
                                        inv2 * (1.0 / 132.0 +
                                                inv2 * (-691.0 / 32760.0))))));
    return std::log(x) - 0.5 * inv - series + shift;
}

namespace {

// Lower regularized gamma P(s, x) by power series, valid for x < s + 1.
double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double a = s;
    for (int n = 0; n < 10000; ++n) {
        a += 1.0;
        term *= x / a;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) {
            break;
        }
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Upper regularized gamma Q(s, x) by modified Lentz continued fraction,
// valid for x >= s + 1.
double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace

double regularized_gamma_q(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("regularized_gamma_q: requires s > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x < s + 1.0) {
        return 1.0 - gamma_p_series(s, x);
    }
    return gamma_q_cf(s, x);
}

RootResult find_root(const std::function<double(double)>& f, Bracket bracket,
                     double f_tol) {
    double a = bracket.lo;
    double b = bracket.hi;
    if (!(a < b)) {
        throw BracketError("find_root: bracket requires lo < hi");
    }
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, fa, 0};
    if (fb == 0.0) return {b, fb, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketError("find_root: no sign change over the bracket");
    }

    // Brent: b tracks the best iterate, a its counterpoint, c the previous b.
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    int iterations = 0;

    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 1e-14 * std::max(1.0, std::fabs(b));
        const double m = 0.5 * (c - b);
        if (std::fabs(fb) <= f_tol || std::fabs(m) <= tol) {
            return {b, fb, iterations};
        }
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = m;
            e = m;
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q),
                                   std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        if (std::fabs(d) > tol) {
            b += d;
        } else {
            b += (m > 0.0 ? tol : -tol);
        }
        fb = f(b);
        ++iterations;
    }
    return {b, fb, iterations};
}

}  // namespace polysemy
