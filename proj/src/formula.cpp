#include "eqsim/formula.hpp"

#include <map>

#include "eqsim/unicode.hpp"

namespace eqsim {

namespace {

bool is_structural(char32_t cp) {
  switch (cp) {
    case '_':
    case '^':
    case '{':
    case '}':
    case '(':
    case ')':
    case '[':
    case ']':
    case '|':
      return true;
    default:
      return false;
  }
}

bool is_ascii_alpha(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

}  // namespace

bool same_symbol(const MathSymbol& a, const MathSymbol& b) {
  return a.kind == b.kind && a.text == b.text;
}

bool same_symbols(const std::vector<MathSymbol>& a,
                  const std::vector<MathSymbol>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_symbol(a[i], b[i])) return false;
  return true;
}

std::vector<MathSymbol> tokenize_formula(std::string_view raw,
                                         std::size_t base_offset) {
  std::vector<MathSymbol> out;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    CodePoint cp = decode_utf8(raw, pos);
    if (cp.length == 0)
      throw ParseError(ErrorKind::InvalidEncoding, base_offset + pos,
                       "invalid UTF-8 inside formula");
    if (is_space(cp.value)) {
      pos += cp.length;
      continue;
    }
    MathSymbol sym;
    sym.bytes.begin = base_offset + pos;
    if (cp.value == '\\') {
      // control sequence: backslash + letters, or backslash + one char
      std::size_t p = pos + 1;
      std::string name;
      while (p < raw.size()) {
        CodePoint c = decode_utf8(raw, p);
        if (c.length == 0 || !is_ascii_alpha(c.value)) break;
        name.push_back(static_cast<char>(c.value));
        p += c.length;
      }
      if (name.empty() && p < raw.size()) {
        CodePoint c = decode_utf8(raw, p);
        if (c.length > 0) {
          append_utf8(name, c.value);
          p += c.length;
        } else {
          ++p;
        }
      }
      sym.kind = SymbolKind::ControlSequence;
      sym.text = name;
      pos = p;
    } else if (is_math_letter(cp.value)) {
      sym.kind = SymbolKind::Identifier;
      append_utf8(sym.text, cp.value);
      pos += cp.length;
    } else if (is_digit(cp.value)) {
      sym.kind = SymbolKind::Digit;
      sym.text.push_back(static_cast<char>(cp.value));
      pos += cp.length;
    } else if (is_structural(cp.value)) {
      sym.kind = SymbolKind::Structural;
      sym.text.push_back(static_cast<char>(cp.value));
      pos += cp.length;
    } else {
      sym.kind = SymbolKind::Operator;
      append_utf8(sym.text, cp.value);
      pos += cp.length;
    }
    sym.bytes.end = base_offset + pos;
    out.push_back(std::move(sym));
  }
  if (out.empty())
    throw ParseError(ErrorKind::EmptyFormula, base_offset,
                     "formula contains no symbols");
  return out;
}

std::vector<MathSymbol> fragment_stream(
    const std::vector<MathSymbol>& canonical) {
  std::vector<MathSymbol> out;
  out.reserve(canonical.size());
  for (const auto& s : canonical)
    if (s.kind != SymbolKind::Structural) out.push_back(s);
  return out;
}

void alpha_canonicalize_document(std::vector<FormulaSpan>& formulas) {
  std::map<std::string, int> names;
  for (auto& f : formulas) {
    f.alpha_canonical = f.canonical;
    for (auto& s : f.alpha_canonical) {
      if (s.kind != SymbolKind::Identifier) continue;
      auto it = names.find(s.text);
      if (it == names.end())
        it = names.emplace(s.text, static_cast<int>(names.size()) + 1).first;
      s.text = "v" + std::to_string(it->second);
    }
  }
}

bool formulas_equal(const FormulaSpan& a, const FormulaSpan& b, bool alpha) {
  return alpha ? same_symbols(a.alpha_canonical, b.alpha_canonical)
               : same_symbols(a.canonical, b.canonical);
}

FormulaSpan make_formula(std::string raw, std::size_t raw_offset,
                         ByteRange span) {
  FormulaSpan f;
  f.raw = std::move(raw);
  f.raw_offset = raw_offset;
  f.span = span;
  f.canonical = tokenize_formula(f.raw, raw_offset);
  f.fragments = fragment_stream(f.canonical);
  return f;
}

}  // namespace eqsim
