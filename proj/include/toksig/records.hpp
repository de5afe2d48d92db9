#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toksig/common.hpp"

namespace toksig {

enum class AnswerFormat { short_answer, multiple_choice };

enum class PromptKind { standard, cot, da };

/// The two answerable branches. `PromptKind::standard` is probe-only and never
/// produces an AnswerResult.
enum class Branch { cot, da };

enum class FinishReason { length, stop };

struct Choice {
    std::string label;  // single uppercase letter, contiguous from 'A'
    std::string text;
};

struct QuestionRecord {
    std::string id;
    std::string benchmark;
    std::string question;
    AnswerFormat format = AnswerFormat::short_answer;
    std::vector<Choice> choices;  // empty for short_answer
    std::string gold;             // numeric string or choice letter
};

struct SamplingParams {
    double temperature = 0.0;  // 0 means greedy
    std::optional<std::int64_t> top_k;
    std::int64_t max_tokens = 0;
};

struct TokenEvent {
    std::string text;
    double prob = 0.0;      // linear softmax probability of the emitted token
    std::int64_t index = 0; // 1-based position in the response
};

struct DecodingTrace {
    std::string question_id;
    std::string benchmark;
    std::string model;
    PromptKind prompt_kind = PromptKind::standard;
    std::vector<TokenEvent> tokens;
    std::string completion_text;
    FinishReason finish_reason = FinishReason::stop;
    SamplingParams sampling;
};

struct AnswerResult {
    std::string question_id;
    Branch prompt_kind = Branch::cot;
    std::optional<std::string> extracted;
    bool correct = false;
    std::int64_t tokens_used = 0;
};

const char* to_string(AnswerFormat f);
const char* to_string(PromptKind k);
const char* to_string(Branch b);
const char* to_string(FinishReason r);
AnswerFormat answer_format_from_string(std::string_view s);
PromptKind prompt_kind_from_string(std::string_view s);
Branch branch_from_string(std::string_view s);
FinishReason finish_reason_from_string(std::string_view s);

/// How many tokens a standard-prompt probe trace may carry at most. Traces
/// that stopped earlier are kept; downstream indicator code handles them.
inline constexpr std::int64_t kDefaultStandardWindow = 50;

/// Throw toksig::error naming the offending record/field if any invariant is
/// violated. Loaders call these on every record; savers call them before
/// writing, so no invalid record ever passes through the persistence surface.
void validate(const QuestionRecord& q);
void validate(const DecodingTrace& t,
              std::int64_t standard_window = kDefaultStandardWindow);
void validate(const AnswerResult& r);

/// True if `s` is a plain decimal numeral: optional sign, digits, optional
/// fractional part. Used to validate short_answer gold values.
bool is_decimal_numeral(std::string_view s);

}  // namespace toksig
