#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "toksig/signature.hpp"

using namespace toksig;
namespace sig = toksig::signature;

namespace {

DecodingTrace trace_with_probs(const std::string& id, std::vector<double> probs) {
    DecodingTrace t;
    t.question_id = id;
    t.benchmark = "bench";
    t.model = "m";
    t.prompt_kind = PromptKind::standard;
    for (size_t i = 0; i < probs.size(); ++i) {
        t.tokens.push_back({" w", probs[i], static_cast<std::int64_t>(i) + 1});
        t.completion_text += " w";
    }
    t.finish_reason = FinishReason::length;
    t.sampling.max_tokens = 50;
    return t;
}

std::vector<double> ramp(size_t n, double start, double step) {
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = start + step * static_cast<double>(i);
    return v;
}

}  // namespace

TEST_CASE("instance correlation of monotone probes") {
    CHECK(sig::instance_sc_single(trace_with_probs("a", ramp(50, 0.30, 0.01)),
                                  50) == 1.0);
    CHECK(sig::instance_sc_single(trace_with_probs("b", ramp(50, 0.80, -0.01)),
                                  50) == -1.0);
}

TEST_CASE("window truncates to the available prefix") {
    auto t = trace_with_probs("c", {0.2, 0.9, 0.4, 0.7});
    CHECK(sig::instance_sc_single(t, 50) == doctest::Approx(0.4).epsilon(1e-12));
    // window 2 sees only the rising prefix
    CHECK(sig::instance_sc_single(t, 2) == 1.0);
}

TEST_CASE("instance correlation error cases") {
    auto one = trace_with_probs("d", {0.5});
    CHECK_THROWS_AS(sig::instance_sc_single(one, 50), error);
    auto flat = trace_with_probs("e", {0.5, 0.5, 0.5});
    CHECK_THROWS_AS(sig::instance_sc_single(flat, 50), undefined_correlation);
}

TEST_CASE("benchmark mean over defined correlations") {
    std::vector<DecodingTrace> corpus = {
        trace_with_probs("up", ramp(10, 0.1, 0.05)),
        trace_with_probs("down", ramp(10, 0.9, -0.05))};
    auto res = sig::instance_sc_benchmark(corpus, 50);
    CHECK(res.mean_rho == 0.0);
    CHECK(res.n_defined == 2);

    SUBCASE("single trace mean equals its correlation") {
        std::vector<DecodingTrace> single = {corpus[0]};
        CHECK(sig::instance_sc_benchmark(single, 50).mean_rho == 1.0);
    }
    SUBCASE("undefined traces are flagged and excluded from the mean") {
        corpus.push_back(trace_with_probs("flat", {0.4, 0.4, 0.4}));
        auto r = sig::instance_sc_benchmark(corpus, 50);
        CHECK(r.mean_rho == 0.0);
        CHECK(r.n_defined == 2);
        REQUIRE(r.per_instance.size() == 3);
        CHECK_FALSE(r.per_instance[2].rho.has_value());
    }
    SUBCASE("all-undefined corpus is an error") {
        std::vector<DecodingTrace> flat = {
            trace_with_probs("f1", {0.4, 0.4}),
            trace_with_probs("f2", {0.6, 0.6})};
        CHECK_THROWS_AS(sig::instance_sc_benchmark(flat, 50), error);
    }
    SUBCASE("reported mean is recomputable from per-instance values") {
        std::mt19937_64 rng(3);
        std::vector<DecodingTrace> big;
        for (int i = 0; i < 40; ++i)
            big.push_back(trace_with_probs(
                "r" + std::to_string(i), test::random_sequence(rng, 50, true)));
        auto r = sig::instance_sc_benchmark(big, 50);
        double sum = 0.0;
        std::int64_t n = 0;
        for (const auto& pi : r.per_instance)
            if (pi.rho) {
                sum += *pi.rho;
                ++n;
            }
        CHECK(n == r.n_defined);
        CHECK(r.mean_rho == doctest::Approx(sum / n).epsilon(1e-15));
    }
}

TEST_CASE("parallel per-instance kernel matches the serial reference") {
    std::mt19937_64 rng(17);
    std::vector<DecodingTrace> corpus;
    for (int i = 0; i < 300; ++i) {
        auto probs = test::random_sequence(rng, 2 + i % 50, i % 4 == 0);
        if (i % 11 == 0) probs.assign(5, 0.3);  // inject undefined slots
        corpus.push_back(trace_with_probs("q" + std::to_string(i), probs));
    }
    auto par = sig::instance_rhos(corpus, 50);
    auto ser = sig::instance_rhos_serial(corpus, 50);
    REQUIRE(par.size() == ser.size());
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].has_value() == ser[i].has_value());
        if (par[i]) CHECK(*par[i] == *ser[i]);  // bit-identical
    }
}

TEST_CASE("aggregated correlation over identical monotone traces is exactly 1") {
    std::vector<DecodingTrace> corpus(100,
                                      trace_with_probs("x", ramp(50, 0.3, 0.005)));
    auto res = sig::aggregated_sc(corpus, 50);
    CHECK(res.value == 1.0);
    CHECK(res.positions_used == 50);
}

TEST_CASE("constant per-position means are an undefined correlation") {
    std::vector<DecodingTrace> corpus = {
        trace_with_probs("a", {0.1, 0.2, 0.3}),
        trace_with_probs("b", {0.3, 0.2, 0.1})};
    CHECK_THROWS_AS(sig::aggregated_sc(corpus, 3), undefined_correlation);
}

TEST_CASE("coverage floor drops sparse tail positions") {
    std::vector<DecodingTrace> corpus;
    for (int i = 0; i < 8; ++i)
        corpus.push_back(trace_with_probs("full" + std::to_string(i),
                                          ramp(10, 0.2, 0.05)));
    corpus.push_back(trace_with_probs("long", ramp(20, 0.2, 0.03)));

    auto res = sig::aggregated_sc(corpus, 20, 0.5);
    CHECK(res.positions_used == 10);  // tail coverage is 1/9
    auto all = sig::aggregated_sc(corpus, 20, 0.0);
    CHECK(all.positions_used == 20);
}

TEST_CASE("corpus of one repeated trace aggregates to its own correlation") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        auto probs = test::random_sequence(rng, 30, false);
        std::vector<DecodingTrace> corpus(5, trace_with_probs("p", probs));
        double inst = sig::instance_sc_single(corpus[0], 50);
        double agg = sig::aggregated_sc(corpus, 50).value;
        CHECK(agg == doctest::Approx(inst).epsilon(1e-12));
    }
}

TEST_CASE("sign rule for predicted significance") {
    CHECK(sig::predict_significance(0.2080) == sig::Prediction::positive);
    CHECK(sig::predict_significance(-0.3917) ==
          sig::Prediction::none_or_negative);
    CHECK(sig::predict_significance(0.0) == sig::Prediction::none_or_negative);

    // pure threshold: the call flips exactly once, at zero
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double v = uni(rng);
        CHECK((sig::predict_significance(v) == sig::Prediction::positive) ==
              (v > 0.0));
    }
}

TEST_CASE("window sweep") {
    std::vector<DecodingTrace> corpus;
    for (int i = 0; i < 10; ++i)
        corpus.push_back(
            trace_with_probs("m" + std::to_string(i), ramp(200, 0.1, 0.003)));

    SUBCASE("monotone corpora score 1 at every window") {
        auto reports = sig::window_sweep(corpus, "bench", "m");
        REQUIRE(reports.size() == 5);
        for (const auto& r : reports) {
            CHECK(r.instance_sc == 1.0);
            CHECK(r.aggregated_sc == 1.0);
        }
        CHECK(reports[0].window == 10);
        CHECK(reports[4].window == 200);
    }
    SUBCASE("a single window equals the direct call") {
        std::vector<std::int64_t> windows{50};
        auto reports = sig::window_sweep(corpus, "bench", "m", windows);
        auto direct = sig::build_report(corpus, "bench", "m", 50);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].instance_sc == direct.instance_sc);
        CHECK(reports[0].aggregated_sc == direct.aggregated_sc);
        CHECK(reports[0].positions_used == direct.positions_used);
    }
}

TEST_CASE("rise-then-fall corpus scores higher at short windows") {
    // probability peaks at token 30 then declines
    std::vector<DecodingTrace> corpus;
    for (int i = 0; i < 6; ++i) {
        std::vector<double> probs;
        for (int t = 1; t <= 120; ++t)
            probs.push_back(t <= 30 ? 0.2 + 0.01 * t : 0.5 - 0.003 * (t - 30));
        corpus.push_back(trace_with_probs("pk" + std::to_string(i), probs));
    }
    auto r20 = sig::build_report(corpus, "b", "m", 20);
    auto r100 = sig::build_report(corpus, "b", "m", 100);
    CHECK(r20.instance_sc > r100.instance_sc);
    CHECK(r20.instance_sc == 1.0);

    // cross-check both against the rank oracle
    std::vector<double> idx20(20), probs20(20);
    for (int t = 0; t < 20; ++t) {
        idx20[t] = t + 1;
        probs20[t] = corpus[0].tokens[t].prob;
    }
    CHECK(r20.instance_sc ==
          doctest::Approx(test::oracle_spearman(probs20, idx20)).epsilon(1e-9));
}

TEST_CASE("prediction accuracy compares indicator sign to observed labels") {
    auto make_report = [](const std::string& bench, double agg) {
        sig::IndicatorReport r;
        r.benchmark = bench;
        r.model = "m";
        r.aggregated_sc = agg;
        r.instance_sc = agg;
        return r;
    };
    std::vector<sig::IndicatorReport> reports = {make_report("b1", 0.4)};
    std::vector<sig::ObservedLabel> observed = {
        {"b1", sig::ObservedSignificance::positive}};
    CHECK(sig::indicator_prediction_accuracy(reports, observed,
                                             sig::Indicator::aggregated_sc) ==
          1.0);

    SUBCASE("inverted labels on a two-benchmark fixture score 0") {
        reports.push_back(make_report("b2", -0.4));
        std::vector<sig::ObservedLabel> flipped = {
            {"b1", sig::ObservedSignificance::none},
            {"b2", sig::ObservedSignificance::positive}};
        CHECK(sig::indicator_prediction_accuracy(
                  reports, flipped, sig::Indicator::aggregated_sc) == 0.0);
    }
    SUBCASE("mismatched benchmark sets are an error") {
        std::vector<sig::ObservedLabel> wrong = {
            {"other", sig::ObservedSignificance::positive}};
        CHECK_THROWS_AS(sig::indicator_prediction_accuracy(
                            reports, wrong, sig::Indicator::aggregated_sc),
                        error);
    }
}
