#pragma once

// Helpers shared by the test binaries: letter-stream building, fixture
// lookup, and the scripted identifier-renaming used by the invariance
// suites. The renamer works on raw document text so the whole pipeline
// (parser included) is exercised, not just the formula tokenizer.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqsim/fixtures.hpp"

namespace support {

// Case-folded letters of a phrase as one token stream, spaces dropped.
// ASCII-only on purpose: the phrases it serves are plain English.
inline std::vector<std::int32_t> letter_stream(std::string_view phrase) {
  std::vector<std::int32_t> ids;
  for (char c : phrase) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isspace(u)) continue;
    ids.push_back(std::tolower(u));
  }
  return ids;
}

inline const eqsim::fixtures::FixturePair& find_pair(std::string_view name) {
  for (const auto& p : eqsim::fixtures::builtin_pairs())
    if (p.name == name) return p;
  throw std::runtime_error("no builtin pair named " + std::string(name));
}

// Walks raw document text and hands every single-letter identifier inside a
// math span to the visitor; letters of control words (\ln, \bar, ...) and
// everything outside math are left alone. Mirrors the delimiter rules the
// parser uses ($...$, $$...$$, \[...\]).
template <typename Visit>
void for_each_math_identifier(std::string_view text, Visit&& visit) {
  bool in_math = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '$') {
      in_math = !in_math;
      i += (i + 1 < text.size() && text[i + 1] == '$') ? 2 : 1;
      continue;
    }
    if (c == '\\' && i + 1 < text.size()) {
      const char next = text[i + 1];
      if (next == '[') {
        in_math = true;
        i += 2;
        continue;
      }
      if (next == ']') {
        in_math = false;
        i += 2;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(next))) {
        i += 2;  // control word: skip its letters entirely
        while (i < text.size() &&
               std::isalpha(static_cast<unsigned char>(text[i])))
          ++i;
        continue;
      }
      i += 2;  // escaped single char
      continue;
    }
    if (in_math && std::isalpha(static_cast<unsigned char>(c))) visit(i);
    ++i;
  }
}

inline std::set<char> formula_letters(std::string_view text) {
  std::set<char> letters;
  for_each_math_identifier(text, [&](std::size_t i) { letters.insert(text[i]); });
  return letters;
}

// Rewrites every math identifier through the map; letters absent from the
// map stay as they are.
inline std::string rename_formula_letters(std::string_view text,
                                          const std::map<char, char>& renaming) {
  std::string out(text);
  for_each_math_identifier(text, [&](std::size_t i) {
    if (auto it = renaming.find(text[i]); it != renaming.end())
      out[i] = it->second;
  });
  return out;
}

// A random injective renaming of the given letters into the full a-zA-Z
// pool. Injectivity is what makes the renaming bijective on its image.
inline std::map<char, char> random_renaming(const std::set<char>& letters,
                                            std::mt19937& rng) {
  std::string pool;
  for (char c = 'a'; c <= 'z'; ++c) pool.push_back(c);
  for (char c = 'A'; c <= 'Z'; ++c) pool.push_back(c);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::map<char, char> renaming;
  std::size_t next = 0;
  for (char c : letters) renaming[c] = pool[next++];
  return renaming;
}

}  // namespace support
