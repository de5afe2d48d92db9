#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "toksig/common.hpp"

namespace toksig::eval {

/// Last maximal numeric token in the text: optional sign, digits with
/// optional three-digit thousands groups, optional decimal part. Thousands
/// commas are stripped from the returned form. A sign counts as part of the
/// number only when it does not directly follow an alphanumeric character
/// (so "5-3" yields "3" but "is -3" yields "-3"). Returns nothing when the
/// text contains no number.
std::optional<std::string> extract_answer_short(std::string_view text);

enum class ChoiceMode {
    direct,            // direct-answer response, honors the "Answer: X" template
    cot_continuation,  // text produced after the letter-choice continuation
};

/// First standalone choice letter in the text, uppercased. In direct mode an
/// "Answer:" template takes precedence over any earlier standalone letter.
/// A standalone letter is a single A-Z/a-z character not adjacent to another
/// alphanumeric character (so "(c)" yields "C" but the article "A cat" holds
/// only if nothing better precedes it — callers restrict to valid labels via
/// the overload below when the label set is known).
std::optional<std::string> extract_answer_choice(std::string_view text,
                                                 ChoiceMode mode);

/// Same, but only letters in [A, A+num_labels) count as choices.
std::optional<std::string> extract_answer_choice(std::string_view text,
                                                 ChoiceMode mode,
                                                 int num_labels);

/// Canonical decimal form: commas and a leading '+' stripped, leading integer
/// zeros and trailing fractional zeros removed, "-0" collapsed to "0".
/// Throws toksig::error if the input is not a decimal numeral.
std::string canonical_number(std::string_view s);

/// Exact rational equality of two decimal numerals ("70.0" equals "70").
bool numbers_equal(std::string_view a, std::string_view b);

/// Case-insensitive single-letter comparison, tolerant of surrounding
/// whitespace and punctuation.
bool letters_equal(std::string_view a, std::string_view b);

}  // namespace toksig::eval
