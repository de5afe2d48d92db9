#pragma once

// Independent reference implementations used only by tests. They deliberately
// avoid the library's code paths: ranks are computed by counting, Pearson by
// naive sums, and the normal CDF by the standard library's erfc.

#include <cmath>
#include <random>
#include <span>
#include <vector>

namespace toksig::test {

// Average rank by counting: rank(v_i) = 1 + #\{v_j < v_i\} + (#\{v_j = v_i\} - 1)/2.
inline std::vector<double> oracle_ranks(std::span<const double> v) {
    std::vector<double> ranks(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        size_t less = 0, equal = 0;
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i]) ++less;
            if (v[j] == v[i]) ++equal;
        }
        ranks[i] = 1.0 + static_cast<double>(less) +
                   0.5 * static_cast<double>(equal - 1);
    }
    return ranks;
}

inline double oracle_pearson(std::span<const double> a,
                             std::span<const double> b) {
    const double n = static_cast<double>(a.size());
    double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        sab += a[i] * b[i];
        saa += a[i] * a[i];
        sbb += b[i] * b[i];
    }
    double cov = n * sab - sa * sb;
    double va = n * saa - sa * sa;
    double vb = n * sbb - sb * sb;
    return cov / std::sqrt(va * vb);
}

inline double oracle_spearman(std::span<const double> x,
                              std::span<const double> y) {
    auto rx = oracle_ranks(x);
    auto ry = oracle_ranks(y);
    return oracle_pearson(rx, ry);
}

// Eq-style closed form, valid only without ties.
inline double oracle_spearman_closed_form(std::span<const double> x,
                                          std::span<const double> y) {
    auto rx = oracle_ranks(x);
    auto ry = oracle_ranks(y);
    double sum_d2 = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) {
        double d = rx[i] - ry[i];
        sum_d2 += d * d;
    }
    double n = static_cast<double>(rx.size());
    return 1.0 - 6.0 * sum_d2 / (n * (n * n - 1.0));
}

// Independent normal CDF via the C standard library.
inline double oracle_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double oracle_two_tailed_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

// Random sequence with optionally injected ties, at least two distinct values.
inline std::vector<double> random_sequence(std::mt19937_64& rng, size_t len,
                                           bool with_ties) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> v(len);
    for (double& x : v) x = uni(rng);
    if (with_ties && len >= 3) {
        std::uniform_int_distribution<size_t> pick(0, len - 1);
        size_t n_ties = len / 3;
        for (size_t k = 0; k < n_ties; ++k) v[pick(rng)] = v[pick(rng)];
    }
    bool distinct = false;
    for (size_t i = 1; i < len; ++i) distinct = distinct || v[i] != v[0];
    if (!distinct) v[0] = uni(rng) + 2.0;
    return v;
}

}  // namespace toksig::test
