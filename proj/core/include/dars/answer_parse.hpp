#pragma once

#include "dars/answer_value.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dars {

enum class ExtractSource : std::uint8_t { BoxedMarker, AnswerPhrase, WholeTail };

struct RawAnswer {
    std::string text;  // non-empty when extraction succeeded
    ExtractSource source = ExtractSource::BoxedMarker;
};

enum class ExtractError : std::uint8_t { None, NoAnswerFound, UnbalancedBraces };

struct ExtractResult {
    RawAnswer answer;
    ExtractError error = ExtractError::None;

    bool ok() const { return error == ExtractError::None; }
};

struct ExtractionConfig {
    // Matched case-insensitively; the text after the last occurrence is the
    // answer when no boxed marker is present.
    std::vector<std::string> answer_phrases = {"the answer is"};
    // Fall back to the trailing line of the response when neither rule
    // fires, instead of reporting NoAnswerFound.
    bool allow_whole_tail = false;
};

// Last balanced \boxed{...} wins; then the last answer phrase; then the
// whole-tail fallback when enabled.
ExtractResult extract_answer(std::string_view response_text, const ExtractionConfig& cfg = {});

// Removes the fixed decoration list (\left, \right, \, \! $ \$, \text{...}
// wrappers, trailing ^\circ and %) and trims outer whitespace/punctuation.
std::string strip_decorations(std::string_view s);

// Total on arbitrary bytes: anything outside the grammar becomes TextValue.
AnswerValue parse_answer(const RawAnswer& raw);
AnswerValue parse_answer_text(std::string_view text);

const char* to_string(ExtractSource s);
const char* to_string(ExtractError e);

}  // namespace dars
