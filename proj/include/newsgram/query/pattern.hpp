#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsgram::query {

/// Deletes the regular-expression metacharacters \ ^ $ . | ? * + ( ) [ ] { },
/// collapses whitespace runs to one space, trims and lowercases. May return
/// an empty string.
std::string sanitize_pattern(std::string_view raw);

/// Splits user input on commas (no sanitization).
std::vector<std::string> split_patterns(std::string_view raw);

/// Number of space-separated parts of a sanitized pattern.
std::size_t pattern_parts(std::string_view sanitized);

}  // namespace newsgram::query
