#include "toksig/evaluation.hpp"

#include <cmath>
#include <unordered_set>

namespace toksig::eval {

const char* to_string(Significance s) {
    switch (s) {
        case Significance::positive: return "positive";
        case Significance::none: return "none";
        case Significance::negative: return "negative";
    }
    return "?";
}

Significance significance_from_string(std::string_view s) {
    if (s == "positive") return Significance::positive;
    if (s == "none") return Significance::none;
    if (s == "negative") return Significance::negative;
    throw error("unknown significance label '" + std::string(s) + "'");
}

SignificanceLabel significance(double z, double p_value, double alpha) {
    if (!std::isfinite(z) || !std::isfinite(p_value))
        throw error("significance: non-finite input");
    SignificanceLabel out;
    out.z = z;
    out.p_value = p_value;
    if (z > 0.0 && p_value < alpha)
        out.label = Significance::positive;
    else if (z < 0.0 && p_value < alpha)
        out.label = Significance::negative;
    else
        out.label = Significance::none;
    return out;
}

double accuracy(std::span<const AnswerResult> results) {
    if (results.empty()) throw error("accuracy: empty result list");
    std::int64_t correct = 0;
    for (const AnswerResult& r : results)
        if (r.correct) ++correct;
    return static_cast<double>(correct) / static_cast<double>(results.size());
}

namespace {
double mean_tokens(std::span<const AnswerResult> results) {
    double sum = 0.0;
    for (const AnswerResult& r : results)
        sum += static_cast<double>(r.tokens_used);
    return sum / static_cast<double>(results.size());
}
}  // namespace

BenchmarkSummary summarize_benchmark(const std::string& benchmark,
                                     const std::string& model,
                                     std::span<const AnswerResult> cot,
                                     std::span<const AnswerResult> da,
                                     std::optional<double> dynamic_acc,
                                     std::optional<double> dynamic_mean_tokens,
                                     double alpha) {
    if (cot.empty() || da.empty())
        throw error("summarize_benchmark: empty result set");
    std::unordered_set<std::string> cot_ids, da_ids;
    for (const AnswerResult& r : cot) cot_ids.insert(r.question_id);
    for (const AnswerResult& r : da) da_ids.insert(r.question_id);
    if (cot_ids != da_ids)
        throw error("summarize_benchmark: chain-of-thought and direct results "
                    "cover different question sets");

    BenchmarkSummary s;
    s.benchmark = benchmark;
    s.model = model;
    s.n = static_cast<std::int64_t>(cot.size());
    s.cot_acc = accuracy(cot);
    s.da_acc = accuracy(da);
    s.dynamic_acc = dynamic_acc;
    s.cot_gain = 100.0 * (s.cot_acc - s.da_acc);
    if (s.cot_acc == s.da_acc) {
        // Identical proportions: z is exactly 0, the two-sided p is 1.
        s.significance = significance(0.0, 1.0, alpha);
    } else {
        stats::ZTestResult zt = stats::two_proportion_z(
            s.da_acc, s.cot_acc, static_cast<std::int64_t>(da.size()),
            static_cast<std::int64_t>(cot.size()));
        s.significance = significance(zt.z, zt.p_value, alpha);
    }
    s.tokens.cot = mean_tokens(cot);
    s.tokens.da = mean_tokens(da);
    s.tokens.dynamic = dynamic_mean_tokens;
    return s;
}

BenchmarkSummary summarize_from_accuracies(const std::string& benchmark,
                                           const std::string& model,
                                           std::int64_t n, double cot_acc,
                                           double da_acc, double alpha) {
    if (n < 1) throw error("summarize_from_accuracies: n must be >= 1");
    BenchmarkSummary s;
    s.benchmark = benchmark;
    s.model = model;
    s.n = n;
    s.cot_acc = cot_acc;
    s.da_acc = da_acc;
    s.cot_gain = 100.0 * (cot_acc - da_acc);
    if (cot_acc == da_acc) {
        s.significance = significance(0.0, 1.0, alpha);
    } else {
        stats::ZTestResult zt = stats::two_proportion_z(da_acc, cot_acc, n, n);
        s.significance = significance(zt.z, zt.p_value, alpha);
    }
    return s;
}

AnswerResult score_trace(const DecodingTrace& trace, const QuestionRecord& q,
                         const ContinuationMap* continuations) {
    if (trace.prompt_kind == PromptKind::standard)
        throw error("score_trace: standard probe traces carry no answer (question '" +
                    trace.question_id + "')");
    AnswerResult r;
    r.question_id = trace.question_id;
    r.prompt_kind = trace.prompt_kind == PromptKind::cot ? Branch::cot : Branch::da;
    r.tokens_used = static_cast<std::int64_t>(trace.tokens.size());

    if (q.format == AnswerFormat::short_answer) {
        r.extracted = extract_answer_short(trace.completion_text);
        r.correct = r.extracted && numbers_equal(*r.extracted, q.gold);
        return r;
    }

    const int labels = static_cast<int>(q.choices.size());
    if (r.prompt_kind == Branch::da) {
        r.extracted = extract_answer_choice(trace.completion_text,
                                            ChoiceMode::direct, labels);
    } else {
        // Multiple-choice chain-of-thought answers come from the short
        // continuation completion, not from the reasoning text itself.
        const std::string* cont = nullptr;
        if (continuations) {
            auto it = continuations->find(trace.question_id);
            if (it != continuations->end()) cont = &it->second;
        }
        if (cont)
            r.extracted = extract_answer_choice(
                *cont, ChoiceMode::cot_continuation, labels);
    }
    r.correct = r.extracted && letters_equal(*r.extracted, q.gold);
    return r;
}

std::vector<AnswerResult> score_traces(
    std::span<const DecodingTrace> traces,
    const std::map<std::string, QuestionRecord>& questions,
    const ContinuationMap* continuations) {
    std::vector<AnswerResult> out;
    out.reserve(traces.size());
    for (const DecodingTrace& t : traces) {
        auto it = questions.find(t.question_id);
        if (it == questions.end())
            throw error("score_traces: no question record for '" +
                        t.question_id + "'");
        out.push_back(score_trace(t, it->second, continuations));
    }
    return out;
}

}  // namespace toksig::eval
