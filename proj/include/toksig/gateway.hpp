#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toksig/prompts.hpp"
#include "toksig/records.hpp"

namespace toksig::gateway {

struct EndpointConfig {
    std::string base_url;          // scheme://host[:port]
    std::string model;
    std::string api_key_env = "TS_API_KEY";
    double timeout_s = 120.0;
    int max_parallel = 4;
    int max_retries = 3;
    int backoff_ms = 500;          // doubled on every retry
    bool use_chat_api = false;     // /v1/chat/completions instead of /v1/completions
    std::optional<ChatWrapper> chat_wrapper;
};

/// One completion request with per-token log-probabilities, converted to a
/// trace with linear probabilities. Retries 429/5xx/transport failures with
/// exponential backoff; anything else fails immediately. Errors when the
/// response exposes no logprobs or its token texts disagree with the
/// completion text.
DecodingTrace complete(const std::string& prompt, const PromptSpec& spec,
                       const EndpointConfig& endpoint,
                       const std::string& question_id,
                       const std::string& benchmark);

/// Short follow-up completion of a multiple-choice chain-of-thought response
/// with the letter-choice continuation phrase; returns the continuation text.
std::string continuation_answer(const DecodingTrace& cot_trace,
                                const QuestionRecord& q,
                                const EndpointConfig& endpoint);

struct CollectFailure {
    std::string question_id;
    std::string message;
};

struct CollectReport {
    std::int64_t requested = 0;
    std::int64_t succeeded = 0;
    std::int64_t skipped = 0;  // already present in the output file
    std::vector<CollectFailure> failures;
};

struct CollectOptions {
    // Also collect the letter-choice continuation for multiple-choice
    // chain-of-thought traces and append it to this JSONL file.
    std::optional<std::filesystem::path> continuations_out;
};

/// Collect traces for a question list with at most max_parallel requests in
/// flight. Traces are appended in question order regardless of completion
/// order; questions already present in the output file are skipped, so an
/// interrupted run can simply be re-run. Per-question failures are reported,
/// never fatal for the batch.
CollectReport collect(std::span<const QuestionRecord> questions,
                      const PromptSpec& spec, const EndpointConfig& endpoint,
                      const std::filesystem::path& out_path,
                      const CollectOptions& options = {});

}  // namespace toksig::gateway
