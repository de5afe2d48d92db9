#pragma once

#include <span>
#include <string>
#include <vector>

#include "toksig/records.hpp"
#include "toksig/router.hpp"

namespace toksig::transfer {

struct SourceProb {
    std::string model;
    double p = 0.5;  // the source model's routing probability for this question
};

struct VoteSheet {
    std::string question_id;
    std::vector<SourceProb> source_probs;  // one entry per source model
    int final_label = 0;                   // 1 iff mean probability > 0.5
};

/// 1 iff the arithmetic mean of the probabilities strictly exceeds one half.
int vote(std::span<const double> probs);

/// Aggregate routing runs from different source models into one sheet per
/// question. Every run must cover the same question id set for the benchmark;
/// any coverage gap is an error listing the missing ids. Decisions whose probe
/// correlation was undefined contribute the neutral probability 0.5.
std::vector<VoteSheet> build_vote_sheets(
    std::span<const router::RoutingRun> runs, const std::string& benchmark);

struct TransferScore {
    double accuracy = 0.0;
    router::TokenTotals totals;
    double savings_pct = 0.0;
};

/// Score the target model's results under the branch each sheet voted for.
/// Token accounting matches router::score_routing.
TransferScore apply_transfer(std::span<const VoteSheet> sheets,
                             std::span<const AnswerResult> target_cot,
                             std::span<const AnswerResult> target_da);

}  // namespace toksig::transfer
