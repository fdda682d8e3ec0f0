#pragma once

// Internal UTF-8 helpers shared by the text modules.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stylomech::utf8 {

inline constexpr char32_t kInvalid = 0xFFFFFFFF;

struct Decoded {
  char32_t cp;
  std::size_t length;  // bytes consumed, >= 1
};

/// Decodes one code point at `pos`. Malformed sequences consume one byte and
/// yield kInvalid, so callers can pass the raw byte through.
inline Decoded decode(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {kInvalid, 1};
  }
  if (pos + len > s.size()) return {kInvalid, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {kInvalid, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

inline std::vector<char32_t> to_codepoints(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto d = decode(s, i);
    out.push_back(d.cp == kInvalid ? static_cast<unsigned char>(s[i]) | 0x80000000u : d.cp);
    i += d.length;
  }
  return out;
}

inline bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

/// Letters of the scripts this project expects to meet: ASCII, Latin
/// supplements, Greek, Cyrillic, Hebrew/Arabic, the Indic blocks (including
/// Sinhala), Thai, CJK and Hangul. Combining marks count as letters so they
/// stay attached to their base.
inline bool is_letter(char32_t c) {
  if (c < 0x80) return is_ascii_alpha(c);
  if (c == 0xD7 || c == 0xF7) return false;
  return (c >= 0x00C0 && c <= 0x024F) || (c >= 0x0300 && c <= 0x036F) ||
         (c >= 0x0370 && c <= 0x052F) || (c >= 0x0590 && c <= 0x06FF) ||
         (c >= 0x0900 && c <= 0x0DFF) || (c >= 0x0E00 && c <= 0x0E7F) ||
         (c >= 0x1E00 && c <= 0x1FFF) || (c >= 0x3040 && c <= 0x30FF) ||
         (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0xAC00 && c <= 0xD7AF);
}

inline bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' ||
         c == 0x00A0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

inline bool is_emoji(char32_t c) {
  return (c >= 0x1F300 && c <= 0x1F5FF) ||  // symbols and pictographs
         (c >= 0x1F600 && c <= 0x1F64F) ||  // emoticons
         (c >= 0x1F680 && c <= 0x1F6FF) ||  // transport and map
         (c >= 0x1F1E6 && c <= 0x1F1FF) ||  // regional indicators (flags)
         (c >= 0x1F900 && c <= 0x1F9FF) ||  // supplemental pictographs
         (c >= 0x1FA70 && c <= 0x1FAFF) ||  // pictographs extended-A
         (c >= 0x2600 && c <= 0x27BF) ||    // misc symbols, dingbats
         c == 0x200D || c == 0xFE0F || c == 0x20E3;
}

}  // namespace stylomech::utf8
