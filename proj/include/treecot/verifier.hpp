#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "treecot/types.hpp"

namespace treecot::verifier {

// Content of the last balanced \boxed{...} in the text, if any.
std::optional<std::string> extract_answer(std::string_view solution_text);

// Trim, collapse internal whitespace, strip surrounding $...$ wrappers.
std::string canonical_answer(std::string_view raw);

// Exact-match verification after canonicalization; numeric-looking answers
// (integers, fractions, plain decimals) compare by rational value, so
// "2/4" == "0.5". Absent prediction is always incorrect.
Verdict score(const std::optional<std::string>& predicted_answer,
              const std::string& reference_answer);

}  // namespace treecot::verifier
