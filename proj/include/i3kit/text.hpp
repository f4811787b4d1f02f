#pragma once

#include <string>
#include <string_view>

namespace i3kit {

/// RFC-4180 field quoting: wraps in double quotes when the value contains a
/// comma, quote, or line break, doubling embedded quotes.
inline std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

/// FNV-1a 64-bit, rendered as 16 hex digits. Digest stability across
/// identical inputs is the only contract here.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace i3kit
