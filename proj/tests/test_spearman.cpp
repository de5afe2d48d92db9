#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "toksig/spearman.hpp"

using namespace toksig;
using signature::spearman;

TEST_CASE("perfectly monotone sequences give exactly +/-1") {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y{1, 2, 3, 4, 5};
    CHECK(spearman(x, y) == 1.0);

    std::vector<double> down{0.9, 0.8, 0.7};
    std::vector<double> up{1, 2, 3};
    CHECK(spearman(down, up) == -1.0);
}

TEST_CASE("hand-ranked example: ranks 1,4,2,3 give 0.4") {
    std::vector<double> x{0.2, 0.9, 0.4, 0.7};
    std::vector<double> y{1, 2, 3, 4};
    CHECK(spearman(x, y) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(spearman(x, y) ==
          doctest::Approx(test::oracle_spearman(x, y)).epsilon(1e-12));
}

TEST_CASE("errors: mismatch, too short, constant input") {
    std::vector<double> a{1, 2, 3};
    std::vector<double> b{1, 2};
    CHECK_THROWS_AS(spearman(a, b), error);
    CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{2}),
                    error);
    std::vector<double> flat{0.5, 0.5, 0.5};
    CHECK_THROWS_AS(spearman(flat, a), undefined_correlation);
    CHECK_THROWS_AS(spearman(a, flat), undefined_correlation);
}

TEST_CASE("symmetry and monotone-transform invariance") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        auto x = test::random_sequence(rng, 2 + it % 40, it % 2 == 0);
        auto y = test::random_sequence(rng, x.size(), it % 3 == 0);
        double rho = spearman(x, y);
        CHECK(rho >= -1.0);
        CHECK(rho <= 1.0);
        CHECK(spearman(y, x) == doctest::Approx(rho).epsilon(1e-12));

        // strictly increasing transform of x leaves the ranks untouched
        std::vector<double> fx(x.size());
        for (size_t i = 0; i < x.size(); ++i) fx[i] = std::exp(3.0 * x[i]);
        CHECK(spearman(fx, y) == doctest::Approx(rho).epsilon(1e-12));

        // strictly decreasing transform flips x against itself
        std::vector<double> gx(x.size());
        for (size_t i = 0; i < x.size(); ++i) gx[i] = -x[i];
        std::vector<double> sorted(x.begin(), x.end());
        std::sort(sorted.begin(), sorted.end());
        bool x_has_ties = false;
        for (size_t i = 1; i < sorted.size(); ++i)
            x_has_ties = x_has_ties || sorted[i] == sorted[i - 1];
        if (x_has_ties) {
            CHECK(spearman(x, gx) == doctest::Approx(-1.0).epsilon(1e-12));
        } else {
            CHECK(spearman(x, gx) == -1.0);
            CHECK(spearman(x, x) == 1.0);
        }
    }
}

TEST_CASE("tie-free sequences match the closed form to 1e-12") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        auto x = test::random_sequence(rng, 2 + it % 60, false);
        auto y = test::random_sequence(rng, x.size(), false);
        double rho = spearman(x, y);
        CHECK(rho == doctest::Approx(test::oracle_spearman_closed_form(x, y))
                         .epsilon(1e-12));
    }
}

TEST_CASE("tied sequences match the rank-Pearson oracle") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 200; ++it) {
        auto x = test::random_sequence(rng, 3 + it % 50, true);
        auto y = test::random_sequence(rng, x.size(), true);
        double rho = spearman(x, y);
        CHECK(rho ==
              doctest::Approx(test::oracle_spearman(x, y)).epsilon(1e-9));
    }
}

TEST_CASE("average ranks handle tie groups") {
    std::vector<double> v{1.0, 2.0, 2.0, 3.0};
    auto r = signature::average_ranks(v);
    CHECK(r == std::vector<double>{1.0, 2.5, 2.5, 4.0});
}
