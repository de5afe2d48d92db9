#include "toksig/gateway.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "toksig/internal/httplib_config.hpp"

#include "toksig/jsonl.hpp"

namespace toksig::gateway {

using nlohmann::json;

namespace {

std::string api_key(const EndpointConfig& endpoint) {
    const char* key = std::getenv(endpoint.api_key_env.c_str());
    if (!key || !*key)
        throw error("API key environment variable '" + endpoint.api_key_env +
                    "' is not set");
    return key;
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

json post_with_retries(const EndpointConfig& endpoint, const std::string& path,
                       const json& body) {
    const std::string key = api_key(endpoint);
    httplib::Client cli(endpoint.base_url);
    cli.set_connection_timeout(std::chrono::duration<double>(endpoint.timeout_s));
    cli.set_read_timeout(std::chrono::duration<double>(endpoint.timeout_s));
    cli.set_write_timeout(std::chrono::duration<double>(endpoint.timeout_s));
    httplib::Headers headers = {{"Authorization", "Bearer " + key}};
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
        if (attempt > 0) {
            auto delay = std::chrono::milliseconds(
                static_cast<std::int64_t>(endpoint.backoff_ms) << (attempt - 1));
            std::this_thread::sleep_for(delay);
        }
        auto res = cli.Post(path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (retryable_status(res->status)) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw error("endpoint returned HTTP " + std::to_string(res->status) +
                        " for " + path + ": " + res->body.substr(0, 200));
        try {
            return json::parse(res->body);
        } catch (const json::exception& e) {
            throw error(std::string("endpoint returned malformed JSON: ") +
                        e.what());
        }
    }
    throw error("request to " + endpoint.base_url + path + " failed after " +
                std::to_string(endpoint.max_retries) + " retries (" +
                last_error + ")");
}

json completion_body(const std::string& prompt, const PromptSpec& spec,
                     const EndpointConfig& endpoint, bool want_logprobs) {
    json body;
    body["model"] = endpoint.model;
    if (endpoint.use_chat_api) {
        body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
        if (want_logprobs) {
            body["logprobs"] = true;
            body["top_logprobs"] = 1;
        }
    } else {
        body["prompt"] = prompt;
        body["echo"] = false;
        if (want_logprobs) body["logprobs"] = 1;
    }
    body["temperature"] = spec.sampling.temperature;
    body["max_tokens"] = spec.sampling.max_tokens;
    if (spec.sampling.top_k && spec.sampling.temperature > 0.0)
        body["top_k"] = *spec.sampling.top_k;
    return body;
}

const json& first_choice(const json& response) {
    if (!response.contains("choices") || !response["choices"].is_array() ||
        response["choices"].empty())
        throw error("endpoint response has no choices");
    return response["choices"][0];
}

FinishReason parse_finish(const json& choice) {
    if (!choice.contains("finish_reason") || !choice["finish_reason"].is_string())
        throw error("endpoint response lacks finish_reason");
    std::string fr = choice["finish_reason"].get<std::string>();
    if (fr == "length") return FinishReason::length;
    if (fr == "stop") return FinishReason::stop;
    throw error("unexpected finish_reason '" + fr + "'");
}

struct TokenData {
    std::vector<std::string> texts;
    std::vector<double> logprobs;
    std::string completion;
};

TokenData parse_tokens(const json& choice, bool chat_api) {
    TokenData data;
    if (!choice.contains("logprobs") || choice["logprobs"].is_null())
        throw error("endpoint does not expose logprobs");
    const json& lp = choice["logprobs"];
    if (chat_api) {
        if (!choice.contains("message") || !choice["message"].contains("content"))
            throw error("chat response lacks message content");
        data.completion = choice["message"]["content"].get<std::string>();
        if (!lp.contains("content") || !lp["content"].is_array())
            throw error("endpoint does not expose logprobs");
        for (const auto& e : lp["content"]) {
            data.texts.push_back(e.at("token").get<std::string>());
            data.logprobs.push_back(e.at("logprob").get<double>());
        }
    } else {
        if (!choice.contains("text")) throw error("response lacks completion text");
        data.completion = choice["text"].get<std::string>();
        if (!lp.contains("tokens") || !lp.contains("token_logprobs"))
            throw error("endpoint does not expose logprobs");
        for (const auto& t : lp["tokens"])
            data.texts.push_back(t.get<std::string>());
        for (const auto& v : lp["token_logprobs"]) {
            if (v.is_null())
                throw error("endpoint returned a null token logprob");
            data.logprobs.push_back(v.get<double>());
        }
    }
    if (data.texts.size() != data.logprobs.size())
        throw error("endpoint returned " + std::to_string(data.texts.size()) +
                    " tokens but " + std::to_string(data.logprobs.size()) +
                    " logprobs");
    return data;
}

}  // namespace

DecodingTrace complete(const std::string& prompt, const PromptSpec& spec,
                       const EndpointConfig& endpoint,
                       const std::string& question_id,
                       const std::string& benchmark) {
    const std::string path =
        endpoint.use_chat_api ? "/v1/chat/completions" : "/v1/completions";
    json response =
        post_with_retries(endpoint, path,
                          completion_body(prompt, spec, endpoint, true));
    const json& choice = first_choice(response);
    TokenData data = parse_tokens(choice, endpoint.use_chat_api);

    DecodingTrace trace;
    trace.question_id = question_id;
    trace.benchmark = benchmark;
    trace.model = endpoint.model;
    trace.prompt_kind = spec.kind;
    trace.finish_reason = parse_finish(choice);
    trace.sampling = spec.sampling;

    std::string joined;
    for (size_t i = 0; i < data.texts.size(); ++i) {
        double lp = data.logprobs[i];
        if (lp > 0.0)
            throw error("token logprob " + jsonfmt::number(lp) +
                        " is positive at position " + std::to_string(i + 1));
        TokenEvent ev;
        ev.text = data.texts[i];
        ev.prob = std::exp(lp);
        ev.index = static_cast<std::int64_t>(i) + 1;
        joined += ev.text;
        trace.tokens.push_back(std::move(ev));
    }
    if (joined != data.completion)
        throw error("token texts do not concatenate to the completion text "
                    "for question '" + question_id + "'");
    trace.completion_text = std::move(joined);
    validate(trace, spec.kind == PromptKind::standard
                        ? spec.sampling.max_tokens
                        : std::numeric_limits<std::int64_t>::max());
    return trace;
}

std::string continuation_answer(const DecodingTrace& cot_trace,
                                const QuestionRecord& q,
                                const EndpointConfig& endpoint) {
    if (q.format != AnswerFormat::multiple_choice)
        throw error("continuation_answer: question '" + q.id +
                    "' is not multiple choice");
    PromptSpec cot_spec = default_spec(PromptKind::cot, q.format);
    std::string prompt = build_prompt(q, cot_spec, endpoint.chat_wrapper) +
                         cot_trace.completion_text + "\n" + kChoiceContinuation;

    PromptSpec cont_spec = cot_spec;
    cont_spec.sampling.max_tokens = 32;
    const std::string path =
        endpoint.use_chat_api ? "/v1/chat/completions" : "/v1/completions";
    json response =
        post_with_retries(endpoint, path,
                          completion_body(prompt, cont_spec, endpoint, false));
    const json& choice = first_choice(response);
    if (endpoint.use_chat_api) {
        if (!choice.contains("message") || !choice["message"].contains("content"))
            throw error("chat response lacks message content");
        return choice["message"]["content"].get<std::string>();
    }
    if (!choice.contains("text")) throw error("response lacks completion text");
    return choice["text"].get<std::string>();
}

namespace {

std::unordered_set<std::string> existing_question_ids(
    const std::filesystem::path& path) {
    std::unordered_set<std::string> ids;
    if (!std::filesystem::exists(path)) return ids;
    std::ifstream in(path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            ids.insert(j.at("question_id").get<std::string>());
        } catch (const json::exception& e) {
            throw error(path.string() + ":" + std::to_string(lineno) +
                        ": malformed line in existing output: " + e.what());
        }
    }
    return ids;
}

struct JobResult {
    bool done = false;
    bool ok = false;
    std::string error_message;
    std::string trace_line;
    std::string continuation_line;
};

}  // namespace

CollectReport collect(std::span<const QuestionRecord> questions,
                      const PromptSpec& spec, const EndpointConfig& endpoint,
                      const std::filesystem::path& out_path,
                      const CollectOptions& options) {
    api_key(endpoint);  // fail fast before spawning workers

    CollectReport report;
    report.requested = static_cast<std::int64_t>(questions.size());

    std::unordered_set<std::string> done = existing_question_ids(out_path);
    std::vector<const QuestionRecord*> todo;
    for (const QuestionRecord& q : questions) {
        if (done.count(q.id))
            ++report.skipped;
        else
            todo.push_back(&q);
    }

    const bool want_continuations =
        options.continuations_out && spec.kind == PromptKind::cot;

    std::vector<JobResult> results(todo.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<size_t> next{0};

    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const QuestionRecord& q = *todo[i];
            JobResult r;
            try {
                PromptSpec q_spec = spec;
                q_spec.format = q.format;  // files may mix answer formats
                std::string prompt =
                    build_prompt(q, q_spec, endpoint.chat_wrapper);
                DecodingTrace trace =
                    complete(prompt, q_spec, endpoint, q.id, q.benchmark);
                r.trace_line = io::to_jsonl(trace);
                if (want_continuations &&
                    q.format == AnswerFormat::multiple_choice) {
                    std::string text = continuation_answer(trace, q, endpoint);
                    r.continuation_line =
                        "{\"question_id\":" + jsonfmt::quote(q.id) +
                        ",\"benchmark\":" + jsonfmt::quote(q.benchmark) +
                        ",\"model\":" + jsonfmt::quote(endpoint.model) +
                        ",\"text\":" + jsonfmt::quote(text) + "}";
                }
                r.ok = true;
            } catch (const std::exception& e) {
                r.ok = false;
                r.error_message = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                r.done = true;
                results[i] = std::move(r);
            }
            cv.notify_one();
        }
    };

    size_t n_workers = std::min<size_t>(
        std::max(1, endpoint.max_parallel), std::max<size_t>(todo.size(), 1));
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);

    // Flush results strictly in question order so the output file order never
    // depends on completion order.
    std::ofstream out(out_path, std::ios::binary | std::ios::app);
    if (!out) {
        for (auto& t : threads) t.join();
        throw error("cannot open " + out_path.string() + " for append");
    }
    std::ofstream cont_out;
    if (want_continuations) {
        cont_out.open(*options.continuations_out,
                      std::ios::binary | std::ios::app);
        if (!cont_out) {
            for (auto& t : threads) t.join();
            throw error("cannot open " + options.continuations_out->string() +
                        " for append");
        }
    }

    for (size_t i = 0; i < todo.size(); ++i) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return results[i].done; });
        JobResult r = std::move(results[i]);
        lock.unlock();
        if (r.ok) {
            out << r.trace_line << '\n';
            out.flush();
            if (want_continuations && !r.continuation_line.empty()) {
                cont_out << r.continuation_line << '\n';
                cont_out.flush();
            }
            ++report.succeeded;
        } else {
            report.failures.push_back({todo[i]->id, r.error_message});
        }
    }
    for (auto& t : threads) t.join();
    return report;
}

}  // namespace toksig::gateway
