#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "eqsim/common.hpp"
#include "eqsim/matcher.hpp"
#include "eqsim/segmenter.hpp"

namespace eqsim {

enum class Mode { Fragment, Method1, Method2, LetterDemo };
enum class Granularity { Word, MathSymbol, Letter };

struct ExclusionToggles {
  bool metadata = true;
  bool bibliography = true;
  bool term_dictionary = true;
  bool stop_phrase = true;
  bool figure_caption = true;
  bool short_sequences = true;

  bool operator==(const ExclusionToggles&) const = default;
};

struct Policy {
  Mode mode = Mode::Method2;
  int word_min_match = 8;    // shortest countable word run / match
  int symbol_min_match = 2;  // shortest countable math-symbol match
  int letter_min_match = 3;  // letter-demo granularity
  int formula_weight = 8;    // w in the weighted hybrid index
  bool alpha = false;        // compare identifier-renamed formulas
  int min_formula_symbols = 1;  // shorter formulas are not counted
  ExclusionToggles exclude;

  void validate() const;  // throws std::invalid_argument
  bool operator==(const Policy&) const = default;
};

struct DirectionCounts {
  std::int64_t words_total = 0;
  std::int64_t words_matched = 0;
  std::int64_t symbols_total = 0;
  std::int64_t symbols_matched = 0;
  std::int64_t formulas_total = 0;
  std::int64_t formulas_matched = 0;

  bool operator==(const DirectionCounts&) const = default;
};

// a_start/b_start are token offsets within the countable stream of the
// tile's granularity (excluded content does not shift them); byte ranges
// point into the respective document's raw text.
struct ReportTile {
  Granularity granularity = Granularity::Word;
  std::int64_t a_start = 0;
  std::int64_t a_len = 0;
  std::int64_t b_start = 0;
  ByteRange a_bytes;
  ByteRange b_bytes;

  bool operator==(const ReportTile&) const = default;
};

struct LedgerEntry {
  char side = 'a';  // 'a' or 'b'
  ExclusionSpan span;

  bool operator==(const LedgerEntry&) const = default;
};

struct SimilarityReport {
  Mode mode = Mode::Method2;
  Policy policy;
  double si_a_given_b = 0.0;  // percent of A's countable units covered
  double si_b_given_a = 0.0;
  bool zero_denominator_a = false;
  bool zero_denominator_b = false;
  DirectionCounts counts_a;
  DirectionCounts counts_b;
  std::vector<ReportTile> tiles;
  // Pairs of indices into Document::formulas, as (a, b): every matched
  // formula on either side appears in at least one pair, paired with its
  // first equal partner on the other side.
  std::vector<std::pair<int, int>> matched_formula_pairs;
  std::vector<LedgerEntry> excluded_ledger;

  bool operator==(const SimilarityReport&) const = default;
};

// Emulates a fragment-matching checker: words and exploded formula symbols
// are tiled in one combined view, words at word_min_match and symbols at
// symbol_min_match, and the index is covered/total over both granularities.
SimilarityReport score_fragment(const Document& a, const Document& b,
                                const Policy& policy);

// Formulas-only comparison by whole-formula equality; words are discarded.
SimilarityReport score_method1(const Document& a, const Document& b,
                               const Policy& policy);

// Weighted hybrid: (matched_words + w * matched_formulas) /
// (words_total + w * formulas_total) * 100 per direction.
SimilarityReport score_method2(const Document& a, const Document& b,
                               const Policy& policy);

// Reductio mode: strips spaces and tiles raw letters. Deliberately absurd;
// kept to demonstrate where fragment matching bottoms out.
SimilarityReport letter_fragment_demo(std::string_view phrase_a,
                                      std::string_view phrase_b,
                                      int min_match = 3);

// Dispatches on policy.mode.
SimilarityReport score(const Document& a, const Document& b,
                       const Policy& policy);

// The defining ratio of an index, recomputed from counts alone.
double recompute_index(Mode mode, const DirectionCounts& counts,
                       int formula_weight);

}  // namespace eqsim
