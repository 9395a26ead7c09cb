#pragma once

#include <string>
#include <string_view>

namespace polarlex {

// True iff `text` is well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid_utf8(std::string_view text);

// Lowercases ASCII, Latin-1, Latin Extended-A, basic Greek and Cyrillic
// capitals. Other code points pass through unchanged. Input must be valid
// UTF-8.
std::string fold_case(std::string_view text);

}  // namespace polarlex
