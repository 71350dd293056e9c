#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace eqsim {

struct CodePoint {
  char32_t value = 0;
  int length = 0;  // bytes consumed; 0 means invalid sequence
};

CodePoint decode_utf8(std::string_view text, std::size_t pos);
bool validate_utf8(std::string_view text, std::size_t* bad_offset = nullptr);
void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_digit(char32_t cp);
// Letters usable in running text: Latin (incl. supplements), Greek, Cyrillic.
bool is_letter(char32_t cp);
// Letters usable as single-symbol math identifiers: Latin and Greek.
bool is_math_letter(char32_t cp);

char32_t to_lower(char32_t cp);
std::string lowercase_utf8(std::string_view text);

}  // namespace eqsim
