#pragma once

#include <string>
#include <string_view>

namespace newsgram::utf8 {

/// Decodes the code point starting at text[pos] and advances pos.
/// Invalid sequences decode to U+FFFD and consume one byte.
char32_t next(std::string_view text, std::size_t& pos);

void append(std::string& out, char32_t cp);

bool is_space(char32_t cp);

/// Latin-1 / windows-1252 bytes to UTF-8.
std::string from_latin1(std::string_view bytes, bool windows1252);

}  // namespace newsgram::utf8
