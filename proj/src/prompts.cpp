#include "toksig/prompts.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace toksig::gateway {

const std::string kCotTrigger = "Let's think step by step";

const std::string kDaTriggerShortAnswer =
    "Your answer must not include any reasoning step. You must only write "
    "your numerical answer directly. You only output 'The answer is <answer>' "
    "where <answer> is the numerical answer to the problem";

const std::string kDaTriggerMultipleChoice =
    "Your answer must not include any reasoning. You must write your answer "
    "directly. Write the answer in the following format: 'Answer: <Your "
    "Answer Letter Choice>'";

const std::string kChoiceContinuation = "So the best answer letter choice is";

const std::map<std::string, ChatWrapper>& builtin_wrappers() {
    static const std::map<std::string, ChatWrapper> wrappers = {
        {"llama3",
         {"llama3",
          "<|begin_of_text|><|start_header_id|>user<|end_header_id|>",
          "<|eot_id|><|start_header_id|>assistant<|end_header_id|>"}},
        {"phi", {"phi", "<|user|>", "<|end|><|assistant|>"}},
        {"mistral", {"mistral", "[INST]", "[/INST]"}},
    };
    return wrappers;
}

std::map<std::string, ChatWrapper> load_wrappers(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open wrappers file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error("malformed wrappers file " + path.string() + ": " + e.what());
    }
    std::map<std::string, ChatWrapper> out = builtin_wrappers();
    if (!j.contains("wrappers") || !j["wrappers"].is_array())
        throw error("wrappers file needs a 'wrappers' array");
    for (const auto& w : j["wrappers"]) {
        ChatWrapper cw;
        cw.name = w.at("name").get<std::string>();
        cw.prefix = w.at("prefix").get<std::string>();
        cw.suffix = w.at("suffix").get<std::string>();
        out[cw.name] = cw;
    }
    return out;
}

PromptSpec default_spec(PromptKind kind, AnswerFormat format) {
    PromptSpec spec;
    spec.kind = kind;
    spec.format = format;
    spec.sampling.temperature = 0.0;
    switch (kind) {
        case PromptKind::standard: spec.sampling.max_tokens = 50; break;
        case PromptKind::cot: spec.sampling.max_tokens = 1024; break;
        case PromptKind::da: spec.sampling.max_tokens = 32; break;
    }
    return spec;
}

std::string render_question(const QuestionRecord& q) {
    std::string body = q.question;
    if (q.format == AnswerFormat::multiple_choice) {
        if (q.choices.empty())
            throw error("question '" + q.id +
                        "' is multiple_choice but has no choices");
        for (const Choice& c : q.choices) body += "\n" + c.label + ". " + c.text;
    }
    return body;
}

std::string build_prompt(const QuestionRecord& q, const PromptSpec& spec,
                         const std::optional<ChatWrapper>& wrapper) {
    if (spec.format != q.format)
        throw error("prompt spec format does not match question '" + q.id + "'");
    std::string core;
    if (!spec.few_shot_prefix.empty()) core += spec.few_shot_prefix + "\n\n";
    core += render_question(q);
    switch (spec.kind) {
        case PromptKind::standard:
            break;  // the probe is the bare question, no trigger at all
        case PromptKind::cot:
            core += "\n" + kCotTrigger;
            break;
        case PromptKind::da:
            core += "\n" + (q.format == AnswerFormat::short_answer
                                ? kDaTriggerShortAnswer
                                : kDaTriggerMultipleChoice);
            break;
    }
    if (wrapper) return wrapper->prefix + "\n" + core + wrapper->suffix;
    return core;
}

}  // namespace toksig::gateway
