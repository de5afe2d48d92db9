#include "toksig/router.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "toksig/signature.hpp"

namespace toksig::router {

namespace {

std::unordered_map<std::string, const AnswerResult*> index_results(
    std::span<const AnswerResult> results) {
    std::unordered_map<std::string, const AnswerResult*> by_id;
    by_id.reserve(results.size());
    for (const AnswerResult& r : results) by_id[r.question_id] = &r;
    return by_id;
}

// Unbiased bounded draw with fully specified semantics, so seeded runs are
// reproducible across standard library implementations.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace

std::vector<LabelCandidate> build_labels(std::span<const AnswerResult> cot,
                                         std::span<const AnswerResult> da) {
    auto da_by_id = index_results(da);
    std::unordered_set<std::string> cot_ids;
    for (const AnswerResult& r : cot) cot_ids.insert(r.question_id);
    for (const AnswerResult& r : da)
        if (!cot_ids.count(r.question_id))
            throw error("build_labels: question '" + r.question_id +
                        "' has a direct result but no chain-of-thought result");

    std::vector<LabelCandidate> out;
    for (const AnswerResult& c : cot) {
        auto it = da_by_id.find(c.question_id);
        if (it == da_by_id.end())
            throw error("build_labels: question '" + c.question_id +
                        "' has a chain-of-thought result but no direct result");
        const AnswerResult& d = *it->second;
        if (c.correct == d.correct) continue;  // tie, excluded
        out.push_back({c.question_id, c.correct ? 1 : 0});
    }
    return out;
}

SampleSplit sample_training(const std::vector<LabelCandidate>& candidates,
                            const std::vector<std::string>& all_ids,
                            std::int64_t sample_size, std::uint64_t seed) {
    if (candidates.empty()) throw error("sample_training: no label candidates");
    if (sample_size < 1) throw error("sample_training: sample_size must be >= 1");

    const size_t n = candidates.size();
    const size_t k = std::min<size_t>(static_cast<size_t>(sample_size), n);

    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(bounded_draw(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<size_t> chosen(idx.begin(), idx.begin() + static_cast<long>(k));
    std::sort(chosen.begin(), chosen.end());

    SampleSplit split;
    std::unordered_set<std::string> sampled_ids;
    for (size_t i : chosen) {
        split.train.push_back(candidates[i]);
        sampled_ids.insert(candidates[i].question_id);
    }
    for (const std::string& id : all_ids)
        if (!sampled_ids.count(id)) split.holdout_ids.push_back(id);
    return split;
}

AssembledTraining make_training_set(
    const std::vector<LabelCandidate>& sampled,
    std::span<const DecodingTrace> standard_traces, std::int64_t window,
    const std::string& benchmark) {
    std::unordered_map<std::string, const DecodingTrace*> by_id;
    for (const DecodingTrace& t : standard_traces) by_id[t.question_id] = &t;

    AssembledTraining out;
    out.set.source_benchmark = benchmark;
    for (const LabelCandidate& c : sampled) {
        auto it = by_id.find(c.question_id);
        if (it == by_id.end())
            throw error("make_training_set: no standard trace for question '" +
                        c.question_id + "'");
        try {
            double rho = signature::instance_sc_single(*it->second, window);
            out.set.examples.push_back({rho, c.label});
        } catch (const undefined_correlation&) {
            out.dropped_ids.push_back(c.question_id);
        }
    }
    if (out.set.examples.empty())
        throw error("make_training_set: every sampled question had an "
                    "undefined probe correlation");
    return out;
}

CostMap build_cost_map(std::span<const AnswerResult> cot,
                       std::span<const AnswerResult> da,
                       std::span<const DecodingTrace> standard_traces) {
    CostMap costs;
    for (const AnswerResult& r : cot) costs[r.question_id].cot = r.tokens_used;
    for (const AnswerResult& r : da) costs[r.question_id].da = r.tokens_used;
    for (const DecodingTrace& t : standard_traces)
        costs[t.question_id].probe = static_cast<std::int64_t>(t.tokens.size());
    return costs;
}

namespace {

RouteDecision route_one(const DecodingTrace& trace,
                        const logistic::LogisticModel& model,
                        std::int64_t window, const TokenCosts& cost,
                        bool charge_probe) {
    RouteDecision d;
    d.question_id = trace.question_id;
    try {
        double rho = signature::instance_sc_single(trace, window);
        d.rho = rho;
        d.p_cot = logistic::predict_proba(model, rho);
        d.choice = logistic::classify(model, rho);
    } catch (const undefined_correlation&) {
        d.choice = Branch::da;  // no confidence signal, take the cheap branch
    }
    d.tokens_charged = d.choice == Branch::cot ? cost.cot : cost.da;
    if (charge_probe) d.tokens_charged += cost.probe;
    return d;
}

template <bool Parallel>
std::vector<RouteDecision> route_impl(
    std::span<const DecodingTrace> standard_traces,
    const logistic::LogisticModel& model,
    const std::vector<std::string>& holdout_ids, std::int64_t window,
    const CostMap& costs, bool charge_probe) {
    std::unordered_map<std::string, const DecodingTrace*> by_id;
    for (const DecodingTrace& t : standard_traces) by_id[t.question_id] = &t;

    struct Job {
        const DecodingTrace* trace;
        const TokenCosts* cost;
    };
    std::vector<Job> jobs;
    jobs.reserve(holdout_ids.size());
    static const TokenCosts kNoCost{};
    for (const std::string& id : holdout_ids) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw error("route_benchmark: no standard trace for question '" +
                        id + "'");
        auto cit = costs.find(id);
        jobs.push_back({it->second, cit == costs.end() ? &kNoCost : &cit->second});
    }

    std::vector<RouteDecision> out(jobs.size());
    const std::int64_t n = static_cast<std::int64_t>(jobs.size());
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = route_one(*jobs[i].trace, model, window, *jobs[i].cost,
                               charge_probe);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            out[i] = route_one(*jobs[i].trace, model, window, *jobs[i].cost,
                               charge_probe);
    }
    return out;
}

}  // namespace

std::vector<RouteDecision> route_benchmark(
    std::span<const DecodingTrace> standard_traces,
    const logistic::LogisticModel& model,
    const std::vector<std::string>& holdout_ids, std::int64_t window,
    const CostMap& costs, bool charge_probe) {
    return route_impl<true>(standard_traces, model, holdout_ids, window, costs,
                            charge_probe);
}

std::vector<RouteDecision> route_benchmark_serial(
    std::span<const DecodingTrace> standard_traces,
    const logistic::LogisticModel& model,
    const std::vector<std::string>& holdout_ids, std::int64_t window,
    const CostMap& costs, bool charge_probe) {
    return route_impl<false>(standard_traces, model, holdout_ids, window, costs,
                             charge_probe);
}

RoutingScore score_routing(std::span<const RouteDecision> decisions,
                           std::span<const AnswerResult> cot,
                           std::span<const AnswerResult> da) {
    if (decisions.empty()) throw error("score_routing: no decisions");
    auto cot_by_id = index_results(cot);
    auto da_by_id = index_results(da);

    RoutingScore s;
    std::int64_t correct = 0;
    for (const RouteDecision& d : decisions) {
        auto cit = cot_by_id.find(d.question_id);
        auto dit = da_by_id.find(d.question_id);
        if (cit == cot_by_id.end() || dit == da_by_id.end())
            throw error("score_routing: missing branch result for question '" +
                        d.question_id + "'");
        const AnswerResult& chosen =
            d.choice == Branch::cot ? *cit->second : *dit->second;
        if (chosen.correct) ++correct;
        s.totals.all_cot += cit->second->tokens_used;
        s.totals.all_da += dit->second->tokens_used;
        s.totals.dynamic += d.tokens_charged;
    }
    s.accuracy = static_cast<double>(correct) /
                 static_cast<double>(decisions.size());
    s.savings_pct =
        s.totals.all_cot > 0
            ? static_cast<double>(s.totals.all_cot - s.totals.dynamic) /
                  static_cast<double>(s.totals.all_cot)
            : 0.0;
    return s;
}

}  // namespace toksig::router
