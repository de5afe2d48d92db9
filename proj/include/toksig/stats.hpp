#pragma once

#include <cstdint>

#include "toksig/common.hpp"

namespace toksig::stats {

/// Complementary error function, |abs error| well below 1e-13 over the real
/// line. Built from the Maclaurin series for small arguments and the classic
/// continued fraction (modified Lentz evaluation) for large ones.
double erfc(double x);

/// Standard normal CDF: Phi(x) = erfc(-x / sqrt(2)) / 2.
double normal_cdf(double x);

struct ZTestResult {
    double z = 0.0;
    double p_value = 0.0;  // two-tailed: 2 * P(N(0,1) > |z|)
};

/// Pooled two-proportion Z test. p1/p2 are the two sample proportions,
/// n1/n2 the sample sizes. Throws when the pooled proportion is 0 or 1
/// (zero variance); callers with exact counts should compare counts directly.
ZTestResult two_proportion_z(double p1, double p2, std::int64_t n1,
                             std::int64_t n2);

}  // namespace toksig::stats
