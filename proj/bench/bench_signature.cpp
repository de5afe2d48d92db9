// Serial reference vs OpenMP kernels on synthetic probe corpora.
//
//   ./bench/toksig_bench --benchmark_min_time=0.5s

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "toksig/logistic.hpp"
#include "toksig/router.hpp"
#include "toksig/signature.hpp"

using namespace toksig;

namespace {

std::vector<DecodingTrace> synthetic_corpus(size_t n_traces, size_t n_tokens) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<DecodingTrace> corpus;
    corpus.reserve(n_traces);
    for (size_t i = 0; i < n_traces; ++i) {
        DecodingTrace t;
        t.question_id = "q" + std::to_string(i);
        t.benchmark = "bench";
        t.model = "m";
        t.prompt_kind = PromptKind::standard;
        for (size_t k = 0; k < n_tokens; ++k) {
            t.tokens.push_back({" w", uni(rng), static_cast<std::int64_t>(k) + 1});
        }
        t.finish_reason = FinishReason::length;
        t.sampling.max_tokens = static_cast<std::int64_t>(n_tokens);
        corpus.push_back(std::move(t));
    }
    return corpus;
}

void BM_instance_rhos_serial(benchmark::State& state) {
    auto corpus = synthetic_corpus(static_cast<size_t>(state.range(0)), 50);
    for (auto _ : state) {
        auto rhos = signature::instance_rhos_serial(corpus, 50);
        benchmark::DoNotOptimize(rhos);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_instance_rhos_parallel(benchmark::State& state) {
    auto corpus = synthetic_corpus(static_cast<size_t>(state.range(0)), 50);
    for (auto _ : state) {
        auto rhos = signature::instance_rhos(corpus, 50);
        benchmark::DoNotOptimize(rhos);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct RoutingInputs {
    std::vector<DecodingTrace> corpus;
    std::vector<std::string> holdout;
    router::CostMap costs;
    logistic::LogisticModel model;
};

RoutingInputs routing_inputs(size_t n) {
    RoutingInputs in;
    in.corpus = synthetic_corpus(n, 50);
    for (const auto& t : in.corpus) {
        in.holdout.push_back(t.question_id);
        in.costs[t.question_id] = {220, 5, 50};
    }
    in.model.weight = 3.0;
    in.model.bias = -0.1;
    return in;
}

void BM_route_serial(benchmark::State& state) {
    auto in = routing_inputs(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        auto d = router::route_benchmark_serial(in.corpus, in.model, in.holdout,
                                                50, in.costs);
        benchmark::DoNotOptimize(d);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_route_parallel(benchmark::State& state) {
    auto in = routing_inputs(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        auto d = router::route_benchmark(in.corpus, in.model, in.holdout, 50,
                                         in.costs);
        benchmark::DoNotOptimize(d);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_instance_rhos_serial)->Arg(1000)->Arg(10000)->Arg(50000);
BENCHMARK(BM_instance_rhos_parallel)->Arg(1000)->Arg(10000)->Arg(50000);
BENCHMARK(BM_route_serial)->Arg(1000)->Arg(10000)->Arg(50000);
BENCHMARK(BM_route_parallel)->Arg(1000)->Arg(10000)->Arg(50000);

BENCHMARK_MAIN();
