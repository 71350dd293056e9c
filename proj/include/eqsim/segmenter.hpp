#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqsim/common.hpp"
#include "eqsim/formula.hpp"

namespace eqsim {

enum class ExclusionReason {
  Metadata,
  Bibliography,
  TermDictionary,
  StopPhrase,
  FigureCaptionPlaceholder,
  // Produced only at scoring time for word runs below the minimum match
  // length; the parser never emits it.
  ShortSequence,
};

struct WordToken {
  std::string normalized;  // lowercased, edge punctuation stripped
  ByteRange bytes;         // original cased slice in the raw text

  bool operator==(const WordToken&) const = default;
};

enum class SegmentKind { Words, Formula, Excluded };

// Segments tile the raw text: each one's range starts where the previous
// ended, the first starts at byte 0 and the last ends at the final byte.
// Excluded segments keep their underlying payload (a word run or a formula)
// so a policy may opt back in without reparsing.
struct Segment {
  SegmentKind kind = SegmentKind::Words;
  ByteRange range;
  std::vector<WordToken> words;  // Words payload (also for excluded runs)
  int formula = -1;              // index into Document::formulas, or -1
  ExclusionReason reason = ExclusionReason::Metadata;  // Excluded only
};

struct ExclusionSpan {
  ByteRange bytes;
  ExclusionReason reason = ExclusionReason::Metadata;

  bool operator==(const ExclusionSpan&) const = default;
};

struct Document {
  std::string source_id;
  std::string raw_text;
  std::vector<Segment> segments;
  std::vector<FormulaSpan> formulas;    // reading order, excluded ones included
  std::vector<ExclusionSpan> exclusions;  // coalesced view of Excluded segments
};

struct ParseOptions {
  std::string source_id;
  bool mark_front_matter = true;   // leading --- ... --- block
  bool mark_bibliography = true;   // References / Bibliography headings
  bool mark_figure_placeholders = true;  // lines starting with "[figure"
};

// Splits raw text into word, formula and excluded segments. Math spans are
// $...$, $$...$$ and \[...\]. Throws ParseError on invalid UTF-8 or an
// unbalanced math delimiter outside of excluded regions.
Document parse_document(std::string_view raw_text,
                        const ParseOptions& options = {});

// Unicode-aware word split: whitespace-separated, edge punctuation
// stripped, lowercased. Hyphenated words stay whole. Tokens that reduce to
// nothing are dropped. base_offset shifts the reported byte ranges.
std::vector<WordToken> tokenize_words(std::string_view text,
                                      std::size_t base_offset = 0);

struct Dictionary {
  struct Phrase {
    std::vector<std::string> words;  // normalized
    std::string original;
  };
  std::vector<Phrase> phrases;
  // Entries written as $...$ exclude formulas whose canonical symbols match.
  std::vector<FormulaSpan> formula_patterns;

  bool empty() const { return phrases.empty() && formula_patterns.empty(); }
};

// One phrase per line; lines starting with '#' and blank lines are ignored.
Dictionary load_dictionary(std::string_view content);
Dictionary load_dictionary_file(const std::string& path);  // throws on I/O error

// Marks every occurrence of every dictionary entry as excluded, returning an
// updated copy. Word phrases match case-insensitively on normalized tokens
// inside Words segments and never span a segment boundary; overlapping
// occurrences merge into one span. Formula patterns exclude whole formula
// segments by canonical equality.
Document apply_phrase_exclusions(const Document& doc, const Dictionary& dict,
                                 ExclusionReason reason =
                                     ExclusionReason::TermDictionary);

}  // namespace eqsim
