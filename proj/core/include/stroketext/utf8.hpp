#pragma once

#include <string>

namespace stroketext {

// Minimal UTF-8 codec; invalid input bytes decode to U+FFFD.
std::string encode_utf8(const std::u32string& s);
std::u32string decode_utf8(const std::string& s);

}  // namespace stroketext
