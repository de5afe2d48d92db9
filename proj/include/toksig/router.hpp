#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toksig/logistic.hpp"
#include "toksig/records.hpp"

namespace toksig::router {

struct RouteDecision {
    std::string question_id;
    std::optional<double> rho;    // empty when the probe prefix was constant
    std::optional<double> p_cot;  // empty exactly when rho is empty
    Branch choice = Branch::da;   // undefined rho always routes to da
    std::int64_t tokens_charged = 0;
};

struct TokenTotals {
    std::int64_t all_cot = 0;
    std::int64_t all_da = 0;
    std::int64_t dynamic = 0;
};

struct RoutingRun {
    std::string benchmark;
    std::string model;
    std::int64_t sample_size = 50;
    std::uint64_t seed = 0;
    std::int64_t window = kDefaultStandardWindow;
    bool charge_probe = false;
    logistic::LogisticModel model_params;
    std::vector<RouteDecision> decisions;
    double accuracy = 0.0;
    TokenTotals token_totals;
};

struct LabelCandidate {
    std::string question_id;
    int label = 0;  // 1 when only chain-of-thought was correct, 0 when only direct
};

/// Pair chain-of-thought and direct results by question id and keep only the
/// questions where exactly one branch was correct. Both-correct and both-wrong
/// questions are excluded. Ids present on one side only are an error.
std::vector<LabelCandidate> build_labels(std::span<const AnswerResult> cot,
                                         std::span<const AnswerResult> da);

struct SampleSplit {
    std::vector<LabelCandidate> train;      // in original candidate order
    std::vector<std::string> holdout_ids;   // everything else, incl. excluded ties
};

/// Seeded uniform sample without replacement of min(sample_size, candidates)
/// label candidates; every other question id in `all_ids` forms the holdout.
/// The same seed always yields the same split, on any platform.
SampleSplit sample_training(const std::vector<LabelCandidate>& candidates,
                            const std::vector<std::string>& all_ids,
                            std::int64_t sample_size, std::uint64_t seed);

/// Join sampled candidates with their probe correlations. Candidates whose
/// probe correlation is undefined cannot carry a feature and are dropped;
/// their ids are returned for auditing.
struct AssembledTraining {
    logistic::TrainingSet set;
    std::vector<std::string> dropped_ids;
};
AssembledTraining make_training_set(const std::vector<LabelCandidate>& sampled,
                                    std::span<const DecodingTrace> standard_traces,
                                    std::int64_t window,
                                    const std::string& benchmark);

/// Per-question token cost of each answer branch, plus the probe length.
struct TokenCosts {
    std::int64_t cot = 0;
    std::int64_t da = 0;
    std::int64_t probe = 0;
};

using CostMap = std::map<std::string, TokenCosts>;

CostMap build_cost_map(std::span<const AnswerResult> cot,
                       std::span<const AnswerResult> da,
                       std::span<const DecodingTrace> standard_traces);

/// Route every holdout question: probe correlation -> classify -> charge the
/// chosen branch's tokens (plus the probe when charge_probe is set). A missing
/// standard trace is an error; an undefined correlation routes to the direct
/// branch with the decision flagged by its empty rho. The parallel kernel and
/// the serial reference produce bit-identical decisions.
std::vector<RouteDecision> route_benchmark(
    std::span<const DecodingTrace> standard_traces,
    const logistic::LogisticModel& model,
    const std::vector<std::string>& holdout_ids, std::int64_t window,
    const CostMap& costs, bool charge_probe = false);
std::vector<RouteDecision> route_benchmark_serial(
    std::span<const DecodingTrace> standard_traces,
    const logistic::LogisticModel& model,
    const std::vector<std::string>& holdout_ids, std::int64_t window,
    const CostMap& costs, bool charge_probe = false);

struct RoutingScore {
    double accuracy = 0.0;
    TokenTotals totals;       // over the decided question set only
    double savings_pct = 0.0; // (all_cot - dynamic) / all_cot
};

/// Accuracy of the chosen branches plus token totals under the all-cot,
/// all-da and dynamic policies over the same decided question set.
RoutingScore score_routing(std::span<const RouteDecision> decisions,
                           std::span<const AnswerResult> cot,
                           std::span<const AnswerResult> da);

}  // namespace toksig::router
