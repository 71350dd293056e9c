#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqsim/common.hpp"

namespace eqsim {

enum class SymbolKind {
  Identifier,       // single Latin or Greek letter (or synthetic v1, v2, ...)
  Digit,            // 0-9, one symbol per digit
  Operator,         // = + - / * , . < > ' and anything else
  Structural,       // _ ^ { } ( ) [ ] |
  ControlSequence,  // \name, kept as one atomic symbol
};

struct MathSymbol {
  SymbolKind kind = SymbolKind::Operator;
  std::string text;
  ByteRange bytes;  // location in the source the symbol came from

  bool operator==(const MathSymbol&) const = default;
};

// kind+text equality; byte positions are irrelevant for matching.
bool same_symbol(const MathSymbol& a, const MathSymbol& b);
bool same_symbols(const std::vector<MathSymbol>& a,
                  const std::vector<MathSymbol>& b);

struct FormulaSpan {
  std::string raw;          // delimiter-free source of the formula
  ByteRange span;           // delimited span in the document ({0,0} standalone)
  std::size_t raw_offset = 0;  // document offset of raw[0]
  std::vector<MathSymbol> canonical;
  std::vector<MathSymbol> fragments;        // canonical minus Structural
  std::vector<MathSymbol> alpha_canonical;  // filled per document
};

// Whitespace-insensitive symbol sequence. Throws ParseError(EmptyFormula)
// when raw holds no symbols at all. base_offset shifts reported byte
// positions so they can point into an enclosing document.
std::vector<MathSymbol> tokenize_formula(std::string_view raw,
                                         std::size_t base_offset = 0);

// The canonical sequence with Structural symbols dropped: what a
// fragment-based checker actually "sees".
std::vector<MathSymbol> fragment_stream(const std::vector<MathSymbol>& canonical);

// Document-wide identifier renaming: each distinct Identifier letter, at
// first occurrence across all formulas in order, maps to v1, v2, ...
// Fills alpha_canonical on every span.
void alpha_canonicalize_document(std::vector<FormulaSpan>& formulas);

bool formulas_equal(const FormulaSpan& a, const FormulaSpan& b,
                    bool alpha = false);

// Convenience for building a span outside of document parsing.
FormulaSpan make_formula(std::string raw, std::size_t raw_offset = 0,
                         ByteRange span = {});

}  // namespace eqsim
