#include "eqsim/unicode.hpp"

namespace eqsim {

CodePoint decode_utf8(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return {};
  const unsigned char b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return {b0, 1};
  if (b0 < 0xC2) return {};  // continuation byte or overlong lead
  auto cont = [&](std::size_t i) {
    return i < text.size() &&
           (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80;
  };
  if (b0 < 0xE0) {
    if (!cont(pos + 1)) return {};
    char32_t cp = ((b0 & 0x1Fu) << 6) |
                  (static_cast<unsigned char>(text[pos + 1]) & 0x3Fu);
    return {cp, 2};
  }
  if (b0 < 0xF0) {
    if (!cont(pos + 1) || !cont(pos + 2)) return {};
    char32_t cp = ((b0 & 0x0Fu) << 12) |
                  ((static_cast<unsigned char>(text[pos + 1]) & 0x3Fu) << 6) |
                  (static_cast<unsigned char>(text[pos + 2]) & 0x3Fu);
    if (cp < 0x800) return {};
    if (cp >= 0xD800 && cp <= 0xDFFF) return {};  // surrogate
    return {cp, 3};
  }
  if (b0 < 0xF5) {
    if (!cont(pos + 1) || !cont(pos + 2) || !cont(pos + 3)) return {};
    char32_t cp = ((b0 & 0x07u) << 18) |
                  ((static_cast<unsigned char>(text[pos + 1]) & 0x3Fu) << 12) |
                  ((static_cast<unsigned char>(text[pos + 2]) & 0x3Fu) << 6) |
                  (static_cast<unsigned char>(text[pos + 3]) & 0x3Fu);
    if (cp < 0x10000 || cp > 0x10FFFF) return {};
    return {cp, 4};
  }
  return {};
}

bool validate_utf8(std::string_view text, std::size_t* bad_offset) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    CodePoint cp = decode_utf8(text, pos);
    if (cp.length == 0) {
      if (bad_offset) *bad_offset = pos;
      return false;
    }
    pos += cp.length;
  }
  return true;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\f':
    case '\v':
    case 0x00A0:
    case 0x2028:
    case 0x2029:
    case 0x3000:
      return true;
    default:
      return (cp >= 0x2000 && cp <= 0x200B);
  }
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x100 && cp <= 0x24F) return true;  // Latin extended
  if (cp >= 0x370 && cp <= 0x3FF)               // Greek
    return cp != 0x37E && cp != 0x387 && cp != 0x384 && cp != 0x385;
  if (cp >= 0x400 && cp <= 0x4FF) return true;  // Cyrillic
  return false;
}

bool is_math_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0x391 && cp <= 0x3C9) return cp != 0x3A2;  // Greek, no reserved slot
  if (cp >= 0x3D0 && cp <= 0x3F5) return true;         // Greek variants
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;   // Cyrillic А..Я
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;   // Ѐ..Џ
  return cp;
}

std::string lowercase_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    CodePoint cp = decode_utf8(text, pos);
    if (cp.length == 0) {  // pass broken bytes through unchanged
      out.push_back(text[pos]);
      ++pos;
      continue;
    }
    append_utf8(out, to_lower(cp.value));
    pos += cp.length;
  }
  return out;
}

}  // namespace eqsim
