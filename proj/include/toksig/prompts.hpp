#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "toksig/records.hpp"

namespace toksig::gateway {

/// Trigger phrases appended to the bare question. Shipped as data in
/// data/prompts.json as well; these are the built-in defaults.
extern const std::string kCotTrigger;
extern const std::string kDaTriggerShortAnswer;
extern const std::string kDaTriggerMultipleChoice;
extern const std::string kChoiceContinuation;

/// Instruction placeholders wrapped around the whole prompt for
/// instruction-tuned models. Selectable by name, user-extensible via a
/// wrappers file.
struct ChatWrapper {
    std::string name;
    std::string prefix;
    std::string suffix;
};

/// Built-in wrapper set: llama3, phi, mistral.
const std::map<std::string, ChatWrapper>& builtin_wrappers();

/// Load wrappers from a JSON file {"wrappers":[{"name","prefix","suffix"}]},
/// merged over the built-ins (file entries win).
std::map<std::string, ChatWrapper> load_wrappers(
    const std::filesystem::path& path);

struct PromptSpec {
    PromptKind kind = PromptKind::standard;
    AnswerFormat format = AnswerFormat::short_answer;
    std::string few_shot_prefix;  // optional exemplar block, prepended verbatim
    SamplingParams sampling;
};

/// Per-kind defaults: greedy decoding with max_tokens 50 (standard),
/// 1024 (chain-of-thought) or 32 (direct answer).
PromptSpec default_spec(PromptKind kind, AnswerFormat format);

/// Render the question body: the question text plus, for multiple choice,
/// one "L. text" line per choice.
std::string render_question(const QuestionRecord& q);

/// Assemble the full prompt: few-shot prefix, question body, kind-specific
/// trigger (standard prompts get none), then the chat wrapper last.
std::string build_prompt(const QuestionRecord& q, const PromptSpec& spec,
                         const std::optional<ChatWrapper>& wrapper = {});

}  // namespace toksig::gateway
