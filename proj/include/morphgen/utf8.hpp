#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace morphgen::utf8 {

// Byte length of the sequence introduced by a lead byte; malformed lead
// bytes count as a single byte.
inline std::size_t sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Splits text into code points, each kept as its UTF-8 byte sequence.
inline std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t n = sequence_length(static_cast<unsigned char>(text[i]));
    if (i + n > text.size()) n = text.size() - i;
    out.emplace_back(text.substr(i, n));
    i += n;
  }
  return out;
}

inline std::size_t length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++count)
    i += sequence_length(static_cast<unsigned char>(text[i]));
  return count;
}

}  // namespace morphgen::utf8
