#include "toksig/jsonl.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace toksig::io {

using nlohmann::json;

namespace {

json parse_line(const std::string& line, const std::filesystem::path& path,
                size_t lineno) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw error(path.string() + ":" + std::to_string(lineno) +
                    ": malformed JSON line: " + e.what());
    }
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path.string());
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fn(line, lineno);
    }
}

std::string get_string(const json& j, const char* key,
                       const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw error(where + ": missing or non-string field '" + key + "'");
    return j[key].get<std::string>();
}

double get_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw error(where + ": missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

std::int64_t get_int(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw error(where + ": missing or non-integer field '" + key + "'");
    return j[key].get<std::int64_t>();
}

QuestionRecord question_from_json(const json& j, const std::string& where) {
    QuestionRecord q;
    q.id = get_string(j, "id", where);
    q.benchmark = get_string(j, "benchmark", where);
    q.question = get_string(j, "question", where);
    q.format = answer_format_from_string(get_string(j, "format", where));
    if (j.contains("choices") && !j["choices"].is_null()) {
        if (!j["choices"].is_array())
            throw error(where + ": 'choices' must be an array");
        for (const auto& c : j["choices"]) {
            q.choices.push_back(
                {get_string(c, "label", where), get_string(c, "text", where)});
        }
    }
    q.gold = get_string(j, "gold", where);
    return q;
}

SamplingParams sampling_from_json(const json& j, const std::string& where) {
    SamplingParams s;
    s.temperature = get_number(j, "temperature", where);
    if (j.contains("top_k") && !j["top_k"].is_null())
        s.top_k = get_int(j, "top_k", where);
    s.max_tokens = get_int(j, "max_tokens", where);
    return s;
}

DecodingTrace trace_from_json(const json& j, const std::string& where) {
    DecodingTrace t;
    t.question_id = get_string(j, "question_id", where);
    t.benchmark = get_string(j, "benchmark", where);
    t.model = get_string(j, "model", where);
    t.prompt_kind = prompt_kind_from_string(get_string(j, "prompt_kind", where));
    if (!j.contains("tokens") || !j["tokens"].is_array())
        throw error(where + ": missing 'tokens' array");
    for (const auto& e : j["tokens"]) {
        TokenEvent ev;
        ev.text = get_string(e, "text", where);
        ev.prob = get_number(e, "prob", where);
        ev.index = get_int(e, "index", where);
        t.tokens.push_back(std::move(ev));
    }
    t.completion_text = get_string(j, "completion_text", where);
    t.finish_reason =
        finish_reason_from_string(get_string(j, "finish_reason", where));
    if (!j.contains("sampling"))
        throw error(where + ": missing 'sampling' object");
    t.sampling = sampling_from_json(j["sampling"], where);
    return t;
}

AnswerResult result_from_json(const json& j, const std::string& where) {
    AnswerResult r;
    r.question_id = get_string(j, "question_id", where);
    r.prompt_kind = branch_from_string(get_string(j, "prompt_kind", where));
    if (j.contains("extracted") && !j["extracted"].is_null())
        r.extracted = get_string(j, "extracted", where);
    if (!j.contains("correct") || !j["correct"].is_boolean())
        throw error(where + ": missing or non-boolean field 'correct'");
    r.correct = j["correct"].get<bool>();
    r.tokens_used = get_int(j, "tokens_used", where);
    return r;
}

template <typename T>
void save_lines(const std::vector<T>& items, const std::filesystem::path& path) {
    std::ostringstream out;
    for (const T& item : items) {
        validate(item);
        out << to_jsonl(item) << '\n';
    }
    write_file(path, out.str());
}

}  // namespace

std::vector<QuestionRecord> load_questions(const std::filesystem::path& path) {
    std::vector<QuestionRecord> out;
    std::unordered_set<std::string> seen;
    for_each_line(path, [&](const std::string& line, size_t lineno) {
        std::string where = path.string() + ":" + std::to_string(lineno);
        json j = parse_line(line, path, lineno);
        QuestionRecord q = question_from_json(j, where);
        try {
            validate(q);
        } catch (const error& e) {
            throw error(where + ": " + e.what());
        }
        std::string key = q.benchmark + "\x1f" + q.id;
        if (!seen.insert(key).second)
            throw error(where + ": duplicate question id '" + q.id +
                        "' in benchmark '" + q.benchmark + "'");
        out.push_back(std::move(q));
    });
    return out;
}

std::vector<DecodingTrace> load_traces(const std::filesystem::path& path,
                                       std::int64_t standard_window) {
    std::vector<DecodingTrace> out;
    for_each_line(path, [&](const std::string& line, size_t lineno) {
        std::string where = path.string() + ":" + std::to_string(lineno);
        json j = parse_line(line, path, lineno);
        DecodingTrace t = trace_from_json(j, where);
        try {
            validate(t, standard_window);
        } catch (const error& e) {
            throw error(where + ": " + e.what());
        }
        out.push_back(std::move(t));
    });
    return out;
}

std::vector<AnswerResult> load_results(const std::filesystem::path& path) {
    std::vector<AnswerResult> out;
    for_each_line(path, [&](const std::string& line, size_t lineno) {
        std::string where = path.string() + ":" + std::to_string(lineno);
        json j = parse_line(line, path, lineno);
        AnswerResult r = result_from_json(j, where);
        try {
            validate(r);
        } catch (const error& e) {
            throw error(where + ": " + e.what());
        }
        out.push_back(std::move(r));
    });
    return out;
}

std::string to_jsonl(const QuestionRecord& q) {
    using namespace jsonfmt;
    std::string s = "{\"id\":" + quote(q.id) +
                    ",\"benchmark\":" + quote(q.benchmark) +
                    ",\"question\":" + quote(q.question) +
                    ",\"format\":" + quote(to_string(q.format));
    if (!q.choices.empty()) {
        s += ",\"choices\":[";
        for (size_t i = 0; i < q.choices.size(); ++i) {
            if (i) s += ',';
            s += "{\"label\":" + quote(q.choices[i].label) +
                 ",\"text\":" + quote(q.choices[i].text) + "}";
        }
        s += "]";
    }
    s += ",\"gold\":" + quote(q.gold) + "}";
    return s;
}

namespace {
std::string sampling_to_json(const SamplingParams& p) {
    using namespace jsonfmt;
    std::string s = "{\"temperature\":" + number(p.temperature);
    if (p.top_k) s += ",\"top_k\":" + number(*p.top_k);
    s += ",\"max_tokens\":" + number(p.max_tokens) + "}";
    return s;
}
}  // namespace

std::string to_jsonl(const DecodingTrace& t) {
    using namespace jsonfmt;
    std::string s = "{\"question_id\":" + quote(t.question_id) +
                    ",\"benchmark\":" + quote(t.benchmark) +
                    ",\"model\":" + quote(t.model) +
                    ",\"prompt_kind\":" + quote(to_string(t.prompt_kind)) +
                    ",\"tokens\":[";
    for (size_t i = 0; i < t.tokens.size(); ++i) {
        if (i) s += ',';
        s += "{\"text\":" + quote(t.tokens[i].text) +
             ",\"prob\":" + number(t.tokens[i].prob) +
             ",\"index\":" + number(t.tokens[i].index) + "}";
    }
    s += "],\"completion_text\":" + quote(t.completion_text) +
         ",\"finish_reason\":" + quote(to_string(t.finish_reason)) +
         ",\"sampling\":" + sampling_to_json(t.sampling) + "}";
    return s;
}

std::string to_jsonl(const AnswerResult& r) {
    using namespace jsonfmt;
    std::string s = "{\"question_id\":" + quote(r.question_id) +
                    ",\"prompt_kind\":" + quote(to_string(r.prompt_kind));
    if (r.extracted) s += ",\"extracted\":" + quote(*r.extracted);
    s += std::string(",\"correct\":") + (r.correct ? "true" : "false") +
         ",\"tokens_used\":" + number(r.tokens_used) + "}";
    return s;
}

DecodingTrace trace_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw error(std::string("malformed trace JSON: ") + e.what());
    }
    return trace_from_json(j, "<inline trace>");
}

void save_questions(const std::vector<QuestionRecord>& qs,
                    const std::filesystem::path& path) {
    save_lines(qs, path);
}

void save_traces(const std::vector<DecodingTrace>& traces,
                 const std::filesystem::path& path) {
    save_lines(traces, path);
}

void save_results(const std::vector<AnswerResult>& results,
                  const std::filesystem::path& path) {
    save_lines(results, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot write " + path.string());
    out << content;
    if (!out) throw error("write failed for " + path.string());
}

}  // namespace toksig::io
