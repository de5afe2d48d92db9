#include "toksig/stats.hpp"

#include <cmath>
#include <numbers>

namespace toksig::stats {

namespace {

// erf(x) = (2/sqrt(pi)) * sum_{n>=0} (-1)^n x^(2n+1) / (n! (2n+1)),
// used for 0 <= x < 2 where the alternating series is well conditioned.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;  // x^(2n+1)/n!
    double sum = 0.0;
    for (int n = 0; n < 200; ++n) {
        double contribution = term / (2.0 * n + 1.0);
        sum += (n % 2 == 0) ? contribution : -contribution;
        term *= x2 / (n + 1.0);
        if (term / (2.0 * n + 3.0) < 1e-18 * std::abs(sum)) break;
    }
    return 2.0 * std::numbers::inv_sqrtpi * sum;
}

// erfc(x) * sqrt(pi) * exp(x^2) = 1 / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// for x >= 2, evaluated with the modified Lentz algorithm.
double erfc_cf(double x) {
    const double tiny = 1e-300;
    double f = x;
    if (f == 0.0) f = tiny;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 10000; ++n) {
        double a = 0.5 * n;
        double b = x;
        d = b + a * d;
        if (d == 0.0) d = tiny;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        double mult = c * d;
        f *= mult;
        if (std::abs(mult - 1.0) <= 1e-17) break;
    }
    return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erfc(double x) {
    if (std::isnan(x)) throw error("erfc: NaN argument");
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < 2.0) return 1.0 - erf_series(x);
    if (x > 27.0) return 0.0;  // below double underflow of exp(-x^2)
    return erfc_cf(x);
}

double normal_cdf(double x) { return 0.5 * erfc(-x / std::numbers::sqrt2); }

ZTestResult two_proportion_z(double p1, double p2, std::int64_t n1,
                             std::int64_t n2) {
    if (n1 < 1 || n2 < 1) throw error("z test: sample sizes must be >= 1");
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
        throw error("z test: proportions must lie in [0,1]");
    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    const double p0 = (p1 * dn1 + p2 * dn2) / (dn1 + dn2);
    if (p0 <= 0.0 || p0 >= 1.0)
        throw error(
            "z test: pooled proportion is degenerate (0 or 1); compare exact "
            "counts instead");
    const double se = std::sqrt(p0 * (1.0 - p0) * (1.0 / dn1 + 1.0 / dn2));
    ZTestResult r;
    r.z = (p2 - p1) / se;
    // 2 * (1 - Phi(|z|)) collapses to erfc(|z| / sqrt(2)) exactly.
    r.p_value = erfc(std::abs(r.z) / std::numbers::sqrt2);
    return r;
}

}  // namespace toksig::stats
