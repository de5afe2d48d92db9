#include "toksig/signature.hpp"

#include <algorithm>
#include <map>

namespace toksig::signature {

double instance_sc_single(const DecodingTrace& trace, std::int64_t window) {
    if (window <= 0) throw error("window must be positive");
    if (trace.tokens.size() < 2)
        throw error("trace for question '" + trace.question_id +
                    "' has fewer than 2 tokens");
    size_t m = std::min<size_t>(trace.tokens.size(),
                                static_cast<size_t>(window));
    std::vector<double> probs(m), idx(m);
    for (size_t i = 0; i < m; ++i) {
        probs[i] = trace.tokens[i].prob;
        idx[i] = static_cast<double>(i + 1);
    }
    return spearman(probs, idx);
}

namespace {

std::optional<double> rho_or_empty(const DecodingTrace& t,
                                   std::int64_t window) {
    if (t.tokens.size() < 2) return std::nullopt;
    try {
        return instance_sc_single(t, window);
    } catch (const undefined_correlation&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<std::optional<double>> instance_rhos_serial(
    std::span<const DecodingTrace> traces, std::int64_t window) {
    std::vector<std::optional<double>> out(traces.size());
    for (size_t i = 0; i < traces.size(); ++i)
        out[i] = rho_or_empty(traces[i], window);
    return out;
}

std::vector<std::optional<double>> instance_rhos(
    std::span<const DecodingTrace> traces, std::int64_t window) {
    std::vector<std::optional<double>> out(traces.size());
    const std::int64_t n = static_cast<std::int64_t>(traces.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = rho_or_empty(traces[i], window);
    return out;
}

InstanceScResult instance_sc_benchmark(std::span<const DecodingTrace> traces,
                                       std::int64_t window) {
    if (traces.empty()) throw error("instance_sc_benchmark: empty corpus");
    auto rhos = instance_rhos(traces, window);

    InstanceScResult res;
    res.per_instance.reserve(traces.size());
    double sum = 0.0;
    for (size_t i = 0; i < traces.size(); ++i) {
        res.per_instance.push_back({traces[i].question_id, rhos[i]});
        if (rhos[i]) {
            sum += *rhos[i];
            ++res.n_defined;
        }
    }
    if (res.n_defined == 0)
        throw error(
            "instance_sc_benchmark: no trace has a defined correlation");
    res.mean_rho = sum / static_cast<double>(res.n_defined);
    return res;
}

std::vector<PositionStat> position_curve(std::span<const DecodingTrace> traces,
                                         std::int64_t window) {
    if (traces.empty()) throw error("position_curve: empty corpus");
    if (window <= 0) throw error("window must be positive");
    std::vector<PositionStat> out(static_cast<size_t>(window));
    const double total = static_cast<double>(traces.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < window; ++t) {
        double sum = 0.0;
        std::int64_t count = 0;
        for (const DecodingTrace& tr : traces) {
            if (static_cast<std::int64_t>(tr.tokens.size()) > t) {
                sum += tr.tokens[static_cast<size_t>(t)].prob;
                ++count;
            }
        }
        PositionStat& s = out[static_cast<size_t>(t)];
        s.position = t + 1;
        s.coverage = static_cast<double>(count) / total;
        s.mean_prob = count > 0 ? sum / static_cast<double>(count) : 0.0;
    }
    return out;
}

AggregatedScResult aggregated_sc(std::span<const DecodingTrace> traces,
                                 std::int64_t window, double min_coverage) {
    auto curve = position_curve(traces, window);
    std::vector<double> positions, means;
    for (const PositionStat& s : curve) {
        if (s.coverage >= min_coverage && s.coverage > 0.0) {
            positions.push_back(static_cast<double>(s.position));
            means.push_back(s.mean_prob);
        }
    }
    if (positions.size() < 2)
        throw error("aggregated_sc: fewer than 2 positions reach coverage " +
                    jsonfmt::number(min_coverage));
    AggregatedScResult res;
    res.value = spearman(means, positions);
    res.positions_used = static_cast<std::int64_t>(positions.size());
    return res;
}

IndicatorReport build_report(std::span<const DecodingTrace> traces,
                             const std::string& benchmark,
                             const std::string& model, std::int64_t window,
                             double min_coverage) {
    IndicatorReport rep;
    rep.benchmark = benchmark;
    rep.model = model;
    rep.window = window;
    InstanceScResult inst = instance_sc_benchmark(traces, window);
    rep.instance_sc = inst.mean_rho;
    rep.per_instance = std::move(inst.per_instance);
    rep.n_questions = inst.n_defined;
    AggregatedScResult agg = aggregated_sc(traces, window, min_coverage);
    rep.aggregated_sc = agg.value;
    rep.positions_used = agg.positions_used;
    return rep;
}

std::vector<IndicatorReport> window_sweep(std::span<const DecodingTrace> traces,
                                          const std::string& benchmark,
                                          const std::string& model,
                                          std::span<const std::int64_t> windows,
                                          double min_coverage) {
    if (traces.empty()) throw error("window_sweep: empty corpus");
    std::vector<IndicatorReport> out;
    out.reserve(windows.size());
    for (std::int64_t w : windows)
        out.push_back(build_report(traces, benchmark, model, w, min_coverage));
    return out;
}

double indicator_prediction_accuracy(std::span<const IndicatorReport> reports,
                                     std::span<const ObservedLabel> observed,
                                     Indicator which) {
    if (reports.empty()) throw error("prediction accuracy: no reports");
    std::map<std::string, ObservedSignificance> by_bench;
    for (const ObservedLabel& o : observed) by_bench[o.benchmark] = o.label;
    if (by_bench.size() != reports.size())
        throw error("prediction accuracy: benchmark sets differ (" +
                    std::to_string(reports.size()) + " reports vs " +
                    std::to_string(by_bench.size()) + " labels)");

    std::int64_t hits = 0;
    for (const IndicatorReport& r : reports) {
        auto it = by_bench.find(r.benchmark);
        if (it == by_bench.end())
            throw error("prediction accuracy: no observed label for benchmark '" +
                        r.benchmark + "'");
        double ind = which == Indicator::instance_sc ? r.instance_sc
                                                     : r.aggregated_sc;
        bool pred_positive = predict_significance(ind) == Prediction::positive;
        bool obs_positive = it->second == ObservedSignificance::positive;
        if (pred_positive == obs_positive) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(reports.size());
}

}  // namespace toksig::signature
