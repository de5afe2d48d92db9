#include "toksig/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace toksig::transfer {

int vote(std::span<const double> probs) {
    if (probs.empty()) throw error("vote: empty probability list");
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0)
            throw error("vote: probability outside [0,1]");
        sum += p;
    }
    return sum / static_cast<double>(probs.size()) > 0.5 ? 1 : 0;
}

std::vector<VoteSheet> build_vote_sheets(
    std::span<const router::RoutingRun> runs, const std::string& benchmark) {
    if (runs.empty()) throw error("build_vote_sheets: no routing runs");
    for (const router::RoutingRun& r : runs)
        if (r.benchmark != benchmark)
            throw error("build_vote_sheets: run for model '" + r.model +
                        "' is for benchmark '" + r.benchmark + "', expected '" +
                        benchmark + "'");

    const router::RoutingRun& first = runs.front();
    std::vector<VoteSheet> sheets;
    sheets.reserve(first.decisions.size());

    std::vector<std::unordered_map<std::string, const router::RouteDecision*>>
        by_id(runs.size());
    for (size_t m = 0; m < runs.size(); ++m) {
        for (const auto& d : runs[m].decisions) by_id[m][d.question_id] = &d;
        if (by_id[m].size() != first.decisions.size()) {
            std::string missing;
            for (const auto& d : first.decisions)
                if (!by_id[m].count(d.question_id))
                    missing += (missing.empty() ? "" : ", ") + d.question_id;
            throw error("build_vote_sheets: run for model '" + runs[m].model +
                        "' does not cover the same questions; missing: " +
                        (missing.empty() ? "(extra ids present)" : missing));
        }
    }

    for (const auto& d0 : first.decisions) {
        VoteSheet sheet;
        sheet.question_id = d0.question_id;
        std::vector<double> probs;
        for (size_t m = 0; m < runs.size(); ++m) {
            auto it = by_id[m].find(d0.question_id);
            if (it == by_id[m].end())
                throw error("build_vote_sheets: run for model '" +
                            runs[m].model + "' is missing question '" +
                            d0.question_id + "'");
            double p = it->second->p_cot.value_or(0.5);
            sheet.source_probs.push_back({runs[m].model, p});
            probs.push_back(p);
        }
        sheet.final_label = vote(probs);
        sheets.push_back(std::move(sheet));
    }
    return sheets;
}

TransferScore apply_transfer(std::span<const VoteSheet> sheets,
                             std::span<const AnswerResult> target_cot,
                             std::span<const AnswerResult> target_da) {
    if (sheets.empty()) throw error("apply_transfer: no vote sheets");
    std::unordered_map<std::string, const AnswerResult*> cot_by_id, da_by_id;
    for (const AnswerResult& r : target_cot) cot_by_id[r.question_id] = &r;
    for (const AnswerResult& r : target_da) da_by_id[r.question_id] = &r;

    TransferScore s;
    std::int64_t correct = 0;
    for (const VoteSheet& sheet : sheets) {
        auto cit = cot_by_id.find(sheet.question_id);
        auto dit = da_by_id.find(sheet.question_id);
        if (cit == cot_by_id.end() || dit == da_by_id.end())
            throw error("apply_transfer: missing target result for question '" +
                        sheet.question_id + "'");
        const AnswerResult& chosen =
            sheet.final_label == 1 ? *cit->second : *dit->second;
        if (chosen.correct) ++correct;
        s.totals.all_cot += cit->second->tokens_used;
        s.totals.all_da += dit->second->tokens_used;
        s.totals.dynamic += chosen.tokens_used;
    }
    s.accuracy = static_cast<double>(correct) / static_cast<double>(sheets.size());
    s.savings_pct =
        s.totals.all_cot > 0
            ? static_cast<double>(s.totals.all_cot - s.totals.dynamic) /
                  static_cast<double>(s.totals.all_cot)
            : 0.0;
    return s;
}

}  // namespace toksig::transfer
