#include "toksig/records.hpp"

#include <cctype>

namespace toksig {

const char* to_string(AnswerFormat f) {
    return f == AnswerFormat::short_answer ? "short_answer" : "multiple_choice";
}

const char* to_string(PromptKind k) {
    switch (k) {
        case PromptKind::standard: return "standard";
        case PromptKind::cot: return "cot";
        case PromptKind::da: return "da";
    }
    return "?";
}

const char* to_string(Branch b) { return b == Branch::cot ? "cot" : "da"; }

const char* to_string(FinishReason r) {
    return r == FinishReason::length ? "length" : "stop";
}

AnswerFormat answer_format_from_string(std::string_view s) {
    if (s == "short_answer") return AnswerFormat::short_answer;
    if (s == "multiple_choice") return AnswerFormat::multiple_choice;
    throw error("unknown answer format '" + std::string(s) + "'");
}

PromptKind prompt_kind_from_string(std::string_view s) {
    if (s == "standard") return PromptKind::standard;
    if (s == "cot") return PromptKind::cot;
    if (s == "da") return PromptKind::da;
    throw error("unknown prompt kind '" + std::string(s) + "'");
}

Branch branch_from_string(std::string_view s) {
    if (s == "cot") return Branch::cot;
    if (s == "da") return Branch::da;
    throw error("unknown branch '" + std::string(s) + "'");
}

FinishReason finish_reason_from_string(std::string_view s) {
    if (s == "length") return FinishReason::length;
    if (s == "stop") return FinishReason::stop;
    throw error("unknown finish reason '" + std::string(s) + "'");
}

bool is_decimal_numeral(std::string_view s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) return false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        size_t frac = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            ++frac;
        }
        if (frac == 0) return false;
    }
    return i == s.size();
}

void validate(const QuestionRecord& q) {
    auto fail = [&](const std::string& msg) {
        throw error("question '" + q.id + "': " + msg);
    };
    if (q.id.empty()) throw error("question with empty id");
    if (q.benchmark.empty()) fail("empty benchmark");
    if (q.question.empty()) fail("empty question text");
    if (q.format == AnswerFormat::multiple_choice) {
        if (q.choices.size() < 2) fail("multiple_choice needs at least 2 choices");
        for (size_t i = 0; i < q.choices.size(); ++i) {
            const std::string& lab = q.choices[i].label;
            char expect = static_cast<char>('A' + i);
            if (lab.size() != 1 || lab[0] != expect)
                fail("choice labels must be unique uppercase letters contiguous "
                     "from 'A'; got '" + lab + "' at position " +
                     std::to_string(i));
        }
        bool found = false;
        for (const auto& c : q.choices) found = found || c.label == q.gold;
        if (!found) fail("gold '" + q.gold + "' is not a present choice label");
    } else {
        if (!q.choices.empty()) fail("short_answer question must not carry choices");
        if (!is_decimal_numeral(q.gold))
            fail("gold '" + q.gold + "' is not a parseable number");
    }
}

void validate(const DecodingTrace& t, std::int64_t standard_window) {
    auto fail = [&](const std::string& msg) {
        throw error("trace for question '" + t.question_id + "': " + msg);
    };
    if (t.question_id.empty()) throw error("trace with empty question_id");
    if (t.tokens.empty()) fail("tokens must be non-empty");

    std::string joined;
    for (size_t i = 0; i < t.tokens.size(); ++i) {
        const TokenEvent& e = t.tokens[i];
        if (!(e.prob >= 0.0 && e.prob <= 1.0))
            fail("prob " + jsonfmt::number(e.prob) + " outside [0,1] at position " +
                 std::to_string(i + 1));
        if (e.index != static_cast<std::int64_t>(i) + 1)
            fail("token indices must increase from 1 with no gaps; got " +
                 std::to_string(e.index) + " at position " + std::to_string(i + 1));
        joined += e.text;
    }
    if (joined != t.completion_text)
        fail("completion_text does not equal the concatenation of token texts");
    if (t.prompt_kind == PromptKind::standard &&
        static_cast<std::int64_t>(t.tokens.size()) > standard_window)
        fail("standard trace has " + std::to_string(t.tokens.size()) +
             " tokens, more than the standard window " +
             std::to_string(standard_window));
    if (!(t.sampling.temperature >= 0.0)) fail("temperature must be >= 0");
    if (t.sampling.max_tokens <= 0) fail("max_tokens must be positive");
    if (t.sampling.top_k && *t.sampling.top_k <= 0) fail("top_k must be positive");
}

void validate(const AnswerResult& r) {
    auto fail = [&](const std::string& msg) {
        throw error("result for question '" + r.question_id + "': " + msg);
    };
    if (r.question_id.empty()) throw error("result with empty question_id");
    if (r.correct && !r.extracted) fail("correct result without an extracted answer");
    if (r.tokens_used < 0) fail("tokens_used must be non-negative");
}

}  // namespace toksig
