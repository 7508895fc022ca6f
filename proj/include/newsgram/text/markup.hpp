#pragma once

#include <string>
#include <string_view>

namespace newsgram::text {

/// Removes every maximal `<...>` run, decodes character entities and
/// collapses whitespace runs to single spaces (trimmed at both ends).
/// A `<` without a closing `>` is kept as text.
std::string strip_markup(std::string_view raw);

/// Decodes named (`&amp;`, `&auml;`, ...) and numeric (`&#228;`, `&#xE4;`)
/// references. Unknown or malformed references are left untouched.
std::string decode_entities(std::string_view text);

}  // namespace newsgram::text
