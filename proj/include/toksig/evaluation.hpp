#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toksig/extract.hpp"
#include "toksig/records.hpp"
#include "toksig/stats.hpp"

namespace toksig::eval {

enum class Significance { positive, none, negative };

const char* to_string(Significance s);
Significance significance_from_string(std::string_view s);

struct SignificanceLabel {
    double z = 0.0;
    double p_value = 1.0;
    Significance label = Significance::none;
};

/// Three-way call at alpha = 0.05: positive iff z > 0 and p < alpha,
/// negative iff z < 0 and p < alpha, none otherwise.
SignificanceLabel significance(double z, double p_value, double alpha = 0.05);

/// Fraction of correct results; errors on an empty list.
double accuracy(std::span<const AnswerResult> results);

struct TokenMeans {
    double cot = 0.0;
    double da = 0.0;
    std::optional<double> dynamic;
};

struct BenchmarkSummary {
    std::string benchmark;
    std::string model;
    std::int64_t n = 0;  // questions in the benchmark
    double cot_acc = 0.0;
    double da_acc = 0.0;
    std::optional<double> dynamic_acc;
    double cot_gain = 0.0;  // percentage points: 100 * (cot_acc - da_acc)
    SignificanceLabel significance;
    TokenMeans tokens;
};

/// Assemble a per-benchmark summary from full chain-of-thought and direct
/// result sets plus (optionally) the accuracy and token mean of a dynamic
/// policy over its decided subset. Both result sets must cover the same ids.
BenchmarkSummary summarize_benchmark(
    const std::string& benchmark, const std::string& model,
    std::span<const AnswerResult> cot, std::span<const AnswerResult> da,
    std::optional<double> dynamic_acc = std::nullopt,
    std::optional<double> dynamic_mean_tokens = std::nullopt,
    double alpha = 0.05);

/// Replay path: build the same summary directly from published accuracies
/// (fractions in [0,1]) and the benchmark size.
BenchmarkSummary summarize_from_accuracies(const std::string& benchmark,
                                           const std::string& model,
                                           std::int64_t n, double cot_acc,
                                           double da_acc, double alpha = 0.05);

/// Text of the short continuation completion used to pull a letter out of a
/// multiple-choice chain-of-thought response, keyed by question id.
using ContinuationMap = std::map<std::string, std::string>;

/// Score one trace against its question: extract, compare, count tokens.
/// For multiple-choice chain-of-thought traces the continuation text is the
/// extraction source; when it is absent the result records no extraction and
/// counts as incorrect.
AnswerResult score_trace(const DecodingTrace& trace, const QuestionRecord& q,
                         const ContinuationMap* continuations = nullptr);

/// Score a whole trace file. Every trace must have a question record; traces
/// with prompt_kind standard are rejected (probes carry no answer).
std::vector<AnswerResult> score_traces(
    std::span<const DecodingTrace> traces,
    const std::map<std::string, QuestionRecord>& questions,
    const ContinuationMap* continuations = nullptr);

}  // namespace toksig::eval
