#include "toksig/extract.hpp"

#include <cctype>

#include "toksig/common.hpp"

namespace toksig::eval {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

// Scans one numeric token starting at `i` (which must point at a digit).
// Returns one past the end and fills `out` with the comma-stripped form.
size_t scan_number(std::string_view s, size_t i, bool negative,
                   std::string& out) {
    const size_t n = s.size();
    out.clear();
    if (negative) out.push_back('-');
    while (i < n && is_digit(s[i])) out.push_back(s[i++]);
    // Thousands groups: a comma followed by exactly three digits that are not
    // themselves followed by a fourth digit.
    while (i + 3 < n && s[i] == ',' && is_digit(s[i + 1]) &&
           is_digit(s[i + 2]) && is_digit(s[i + 3]) &&
           (i + 4 >= n || !is_digit(s[i + 4]))) {
        out.push_back(s[i + 1]);
        out.push_back(s[i + 2]);
        out.push_back(s[i + 3]);
        i += 4;
    }
    // Decimal part: a dot followed by at least one digit.
    if (i < n && s[i] == '.' && i + 1 < n && is_digit(s[i + 1])) {
        out.push_back('.');
        ++i;
        while (i < n && is_digit(s[i])) out.push_back(s[i++]);
    }
    return i;
}

}  // namespace

std::optional<std::string> extract_answer_short(std::string_view text) {
    std::optional<std::string> last;
    std::string tok;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        bool sign = (c == '-' || c == '+') && i + 1 < text.size() &&
                    is_digit(text[i + 1]) &&
                    (i == 0 || !is_alnum(text[i - 1]));
        if (sign) {
            size_t end = scan_number(text, i + 1, c == '-', tok);
            last = tok;
            i = end;
        } else if (is_digit(c)) {
            size_t end = scan_number(text, i, false, tok);
            last = tok;
            i = end;
        } else {
            ++i;
        }
    }
    return last;
}

namespace {

bool standalone_at(std::string_view s, size_t i) {
    bool left_ok = i == 0 || !is_alnum(s[i - 1]);
    bool right_ok = i + 1 >= s.size() || !is_alnum(s[i + 1]);
    return left_ok && right_ok;
}

std::optional<std::string> first_standalone_letter(std::string_view s,
                                                   int num_labels) {
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (!std::isalpha(static_cast<unsigned char>(c))) continue;
        char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (up < 'A' || up >= 'A' + num_labels) continue;
        if (standalone_at(s, i)) return std::string(1, up);
    }
    return std::nullopt;
}

// Case-insensitive search for "answer" followed by optional spaces and ':'.
std::optional<size_t> find_answer_template(std::string_view s) {
    static constexpr std::string_view kWord = "answer";
    for (size_t i = 0; i + kWord.size() < s.size() + 1; ++i) {
        bool match = true;
        for (size_t k = 0; k < kWord.size(); ++k) {
            if (std::tolower(static_cast<unsigned char>(s[i + k])) != kWord[k]) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        size_t j = i + kWord.size();
        while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
        if (j < s.size() && s[j] == ':') return j + 1;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> extract_answer_choice(std::string_view text,
                                                 ChoiceMode mode,
                                                 int num_labels) {
    if (num_labels < 1 || num_labels > 26)
        throw error("extract_answer_choice: num_labels must be in 1..26");
    if (mode == ChoiceMode::direct) {
        if (auto after = find_answer_template(text)) {
            if (auto letter =
                    first_standalone_letter(text.substr(*after), num_labels))
                return letter;
        }
    }
    return first_standalone_letter(text, num_labels);
}

std::optional<std::string> extract_answer_choice(std::string_view text,
                                                 ChoiceMode mode) {
    return extract_answer_choice(text, mode, 26);
}

std::string canonical_number(std::string_view s) {
    std::string stripped;
    stripped.reserve(s.size());
    for (char c : s)
        if (c != ',') stripped.push_back(c);

    size_t i = 0;
    bool negative = false;
    if (i < stripped.size() && (stripped[i] == '+' || stripped[i] == '-')) {
        negative = stripped[i] == '-';
        ++i;
    }
    std::string intpart, fracpart;
    while (i < stripped.size() && is_digit(stripped[i]))
        intpart.push_back(stripped[i++]);
    if (i < stripped.size() && stripped[i] == '.') {
        ++i;
        while (i < stripped.size() && is_digit(stripped[i]))
            fracpart.push_back(stripped[i++]);
        if (fracpart.empty())
            throw error("not a decimal numeral: '" + std::string(s) + "'");
    }
    if (intpart.empty() || i != stripped.size())
        throw error("not a decimal numeral: '" + std::string(s) + "'");

    size_t lead = 0;
    while (lead + 1 < intpart.size() && intpart[lead] == '0') ++lead;
    intpart.erase(0, lead);
    while (!fracpart.empty() && fracpart.back() == '0') fracpart.pop_back();

    std::string out;
    if (negative) out.push_back('-');
    out += intpart;
    if (!fracpart.empty()) {
        out.push_back('.');
        out += fracpart;
    }
    if (out == "-0") out = "0";
    return out;
}

bool numbers_equal(std::string_view a, std::string_view b) {
    return canonical_number(a) == canonical_number(b);
}

bool letters_equal(std::string_view a, std::string_view b) {
    auto single = [](std::string_view s) -> std::optional<char> {
        std::optional<char> letter;
        for (char c : s) {
            if (std::isalpha(static_cast<unsigned char>(c))) {
                if (letter) return std::nullopt;  // more than one letter
                letter = static_cast<char>(
                    std::toupper(static_cast<unsigned char>(c)));
            } else if (is_alnum(c)) {
                return std::nullopt;
            }
        }
        return letter;
    };
    auto la = single(a);
    auto lb = single(b);
    return la && lb && *la == *lb;
}

}  // namespace toksig::eval
