#pragma once

#include <string>
#include <string_view>

namespace clocrc::uni {

// Decodes UTF-8 into Unicode scalar values. Invalid byte sequences decode to
// U+FFFD, one replacement character per rejected byte.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view codepoints);

bool is_space(char32_t cp);

// Simple (1:1) case fold; identity outside the covered ranges (< U+0500).
char32_t fold_case(char32_t cp);

// Composes adjacent (starter, combining mark) pairs that have a canonical
// composition, left to right until no pair remains. Covers Latin and
// Cyrillic (composed code points below U+0500). Idempotent.
std::u32string compose_canonical(std::u32string_view codepoints);

}  // namespace clocrc::uni
