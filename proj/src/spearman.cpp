#include "toksig/spearman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace toksig::signature {

std::vector<double> average_ranks(std::span<const double> v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        // positions i..j (0-based) share the average of ranks i+1..j+1
        double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

bool has_two_distinct(std::span<const double> v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != v[0]) return true;
    return false;
}

bool has_ties(std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return true;
    return false;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    if (n != y.size())
        throw error("spearman: length mismatch (" + std::to_string(n) + " vs " +
                    std::to_string(y.size()) + ")");
    if (n < 2) throw error("spearman: need at least 2 observations");
    for (size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw error("spearman: non-finite value at position " +
                        std::to_string(i + 1));
    if (!has_two_distinct(x))
        throw undefined_correlation("spearman: first sequence is constant");
    if (!has_two_distinct(y))
        throw undefined_correlation("spearman: second sequence is constant");

    std::vector<double> rx = average_ranks(x);
    std::vector<double> ry = average_ranks(y);

    if (!has_ties(x) && !has_ties(y)) {
        double sum_d2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double d = rx[i] - ry[i];
            sum_d2 += d * d;
        }
        double nn = static_cast<double>(n);
        return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
    }

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = rx[i] - mx;
        double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw undefined_correlation("spearman: zero rank variance");
    double rho = sxy / std::sqrt(sxx * syy);
    return std::clamp(rho, -1.0, 1.0);
}

}  // namespace toksig::signature
