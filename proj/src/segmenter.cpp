#include "eqsim/segmenter.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "eqsim/unicode.hpp"

namespace eqsim {

namespace {

std::string_view trim_ascii(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (static_cast<unsigned char>(s[b]) <= ' ')) ++b;
  while (e > b && (static_cast<unsigned char>(s[e - 1]) <= ' ')) --e;
  return s.substr(b, e - b);
}

std::size_t line_end(std::string_view text, std::size_t pos) {
  std::size_t e = text.find('\n', pos);
  return e == std::string_view::npos ? text.size() : e;
}

bool is_bibliography_heading(std::string_view line) {
  static const std::array<std::string, 3> headings = {
      "references", "bibliography",
      "\xd1\x81\xd0\xbf\xd0\xb8\xd1\x81\xd0\xbe\xd0\xba "
      "\xd0\xbb\xd0\xb8\xd1\x82\xd0\xb5\xd1\x80\xd0\xb0\xd1\x82"
      "\xd1\x83\xd1\x80\xd1\x8b"};  // "список литературы"
  std::string t = lowercase_utf8(trim_ascii(line));
  for (const auto& h : headings)
    if (t == h) return true;
  return false;
}

bool is_figure_placeholder_line(std::string_view line) {
  std::string t = lowercase_utf8(trim_ascii(line));
  return t.rfind("[figure", 0) == 0;
}

struct MathOpen {
  std::size_t open_len = 0;
  std::size_t close_pos = 0;  // position of the closer
  std::size_t close_len = 0;
  bool found = false;
};

bool math_starts_here(std::string_view text, std::size_t pos) {
  if (text[pos] == '$') return true;
  return text[pos] == '\\' && pos + 1 < text.size() && text[pos + 1] == '[';
}

// Locates the closing delimiter for the math span opening at pos, searching
// no further than limit. found=false when there is no closer in range.
MathOpen find_math_close(std::string_view text, std::size_t pos,
                         std::size_t limit) {
  MathOpen r;
  std::string_view window = text.substr(0, limit);
  if (text[pos] == '\\') {  // \[ ... \]
    r.open_len = 2;
    std::size_t c = window.find("\\]", pos + 2);
    if (c == std::string_view::npos) return r;
    r.close_pos = c;
    r.close_len = 2;
    r.found = true;
    return r;
  }
  if (pos + 1 < limit && text[pos + 1] == '$') {  // $$ ... $$
    r.open_len = 2;
    std::size_t c = window.find("$$", pos + 2);
    if (c == std::string_view::npos) return r;
    r.close_pos = c;
    r.close_len = 2;
    r.found = true;
    return r;
  }
  r.open_len = 1;  // $ ... $, skipping escaped \$
  std::size_t c = pos + 1;
  while (c < limit) {
    c = window.find('$', c);
    if (c == std::string_view::npos) return r;
    if (c > 0 && text[c - 1] == '\\') {
      ++c;
      continue;
    }
    r.close_pos = c;
    r.close_len = 1;
    r.found = true;
    return r;
  }
  return r;
}

bool blank_interior(std::string_view text, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i)
    if (static_cast<unsigned char>(text[i]) > ' ') return false;
  return true;
}

class DocumentBuilder {
 public:
  DocumentBuilder(Document& doc, std::string_view text)
      : doc_(doc), text_(text) {}

  // content_end values are strictly increasing; the final chain pass turns
  // them into a gap-free tiling of [0, text size).
  void push_words(std::vector<WordToken> tokens, std::size_t content_end) {
    Segment seg;
    seg.kind = SegmentKind::Words;
    seg.words = std::move(tokens);
    seg.range = {seg.words.front().bytes.begin, content_end};
    doc_.segments.push_back(std::move(seg));
  }

  void push_formula(FormulaSpan formula, std::size_t content_end) {
    Segment seg;
    seg.kind = SegmentKind::Formula;
    seg.formula = static_cast<int>(doc_.formulas.size());
    seg.range = {formula.span.begin, content_end};
    doc_.formulas.push_back(std::move(formula));
    doc_.segments.push_back(std::move(seg));
  }

  void push_excluded_words(std::vector<WordToken> tokens,
                           ExclusionReason reason, std::size_t content_begin,
                           std::size_t content_end) {
    Segment seg;
    seg.kind = SegmentKind::Excluded;
    seg.reason = reason;
    seg.words = std::move(tokens);
    seg.range = {content_begin, content_end};
    doc_.segments.push_back(std::move(seg));
  }

  void push_excluded_formula(FormulaSpan formula, ExclusionReason reason,
                             std::size_t content_end) {
    Segment seg;
    seg.kind = SegmentKind::Excluded;
    seg.reason = reason;
    seg.formula = static_cast<int>(doc_.formulas.size());
    seg.range = {formula.span.begin, content_end};
    doc_.formulas.push_back(std::move(formula));
    doc_.segments.push_back(std::move(seg));
  }

  // Flushes the pending plain-text gap [gap, pos) as a Words segment.
  void flush_gap(std::size_t gap, std::size_t pos) {
    if (gap >= pos) return;
    auto tokens = tokenize_words(text_.substr(gap, pos - gap), gap);
    if (tokens.empty()) return;
    std::size_t content_end = tokens.back().bytes.end;
    push_words(std::move(tokens), content_end);
  }

  // Scans an excluded region leniently: balanced math spans become excluded
  // formulas, everything else excluded word runs; an unbalanced delimiter is
  // treated as plain text rather than an error.
  void scan_excluded_region(std::size_t rbegin, std::size_t rend,
                            ExclusionReason reason) {
    std::size_t first_seg = doc_.segments.size();
    std::size_t pos = rbegin, gap = rbegin;
    while (pos < rend) {
      if (math_starts_here(text_, pos)) {
        MathOpen mo = find_math_close(text_, pos, rend);
        if (mo.found) {
          std::size_t ibegin = pos + mo.open_len;
          std::size_t send = mo.close_pos + mo.close_len;
          if (!blank_interior(text_, ibegin, mo.close_pos)) {
            flush_excluded_gap(gap, pos, reason);
            push_excluded_formula(
                make_formula(std::string(text_.substr(ibegin,
                                                      mo.close_pos - ibegin)),
                             ibegin, {pos, send}),
                reason, send);
            gap = send;
          }
          pos = send;
          continue;
        }
        pos += mo.open_len;  // no closer: literal text
        continue;
      }
      if (text_[pos] == '\\' && pos + 1 < rend && text_[pos + 1] == '$') {
        pos += 2;
        continue;
      }
      CodePoint cp = decode_utf8(text_, pos);
      pos += cp.length == 0 ? 1 : cp.length;
    }
    flush_excluded_gap(gap, rend, reason);
    if (doc_.segments.size() == first_seg) {
      // token-free region still needs a covering segment
      push_excluded_words({}, reason, rbegin, rend);
    } else {
      doc_.segments.back().range.end = rend;
    }
  }

  void flush_excluded_gap(std::size_t gap, std::size_t pos,
                          ExclusionReason reason) {
    if (gap >= pos) return;
    auto tokens = tokenize_words(text_.substr(gap, pos - gap), gap);
    if (tokens.empty()) return;
    std::size_t b = tokens.front().bytes.begin;
    std::size_t e = tokens.back().bytes.end;
    push_excluded_words(std::move(tokens), reason, b, e);
  }

 private:
  Document& doc_;
  std::string_view text_;
};

// Rewrites segment ranges into a contiguous chain covering [0, total).
void chain_segment_ranges(std::vector<Segment>& segments, std::size_t total) {
  std::size_t prev = 0;
  for (auto& seg : segments) {
    std::size_t end = std::max(seg.range.end, prev);
    seg.range = {prev, end};
    prev = end;
  }
  if (!segments.empty()) segments.back().range.end = total;
}

std::vector<ExclusionSpan> coalesce_exclusions(
    const std::vector<Segment>& segments) {
  std::vector<ExclusionSpan> out;
  for (const auto& seg : segments) {
    if (seg.kind != SegmentKind::Excluded) continue;
    if (!out.empty() && out.back().reason == seg.reason &&
        out.back().bytes.end == seg.range.begin) {
      out.back().bytes.end = seg.range.end;
    } else {
      out.push_back({seg.range, seg.reason});
    }
  }
  return out;
}

}  // namespace

std::vector<WordToken> tokenize_words(std::string_view text,
                                      std::size_t base_offset) {
  std::vector<WordToken> out;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (pos < n) {
    CodePoint cp = decode_utf8(text, pos);
    std::size_t step = cp.length == 0 ? 1 : cp.length;
    if (cp.length == 0 || is_space(cp.value)) {
      pos += step;
      continue;
    }
    std::size_t start = pos;
    while (pos < n) {
      CodePoint c = decode_utf8(text, pos);
      if (c.length == 0) {
        ++pos;
        continue;
      }
      if (is_space(c.value)) break;
      pos += c.length;
    }
    // strip edge punctuation: keep from the first to the last letter/digit
    std::string_view chunk = text.substr(start, pos - start);
    std::size_t first = chunk.size(), last = 0;
    std::size_t p = 0;
    bool any = false;
    while (p < chunk.size()) {
      CodePoint c = decode_utf8(chunk, p);
      std::size_t len = c.length == 0 ? 1 : c.length;
      if (c.length != 0 && (is_letter(c.value) || is_digit(c.value))) {
        if (!any) first = p;
        any = true;
        last = p + len;
      }
      p += len;
    }
    if (!any) continue;  // punctuation-only chunk
    WordToken tok;
    tok.normalized = lowercase_utf8(chunk.substr(first, last - first));
    tok.bytes = {base_offset + start + first, base_offset + start + last};
    out.push_back(std::move(tok));
  }
  return out;
}

Document parse_document(std::string_view raw_text,
                        const ParseOptions& options) {
  std::size_t bad = 0;
  if (!validate_utf8(raw_text, &bad))
    throw ParseError(ErrorKind::InvalidEncoding, bad,
                     "input is not valid UTF-8 at byte " + std::to_string(bad));

  Document doc;
  doc.source_id = options.source_id;
  doc.raw_text = std::string(raw_text);
  std::string_view text = doc.raw_text;
  DocumentBuilder builder(doc, text);
  const std::size_t n = text.size();

  std::size_t body_start = 0;
  if (options.mark_front_matter && n > 0) {
    std::size_t eol0 = line_end(text, 0);
    if (trim_ascii(text.substr(0, eol0)) == "---") {
      std::size_t ls = eol0 < n ? eol0 + 1 : n;
      while (ls < n) {
        std::size_t le = line_end(text, ls);
        if (trim_ascii(text.substr(ls, le - ls)) == "---") {
          std::size_t region_end = le < n ? le + 1 : le;
          builder.scan_excluded_region(0, region_end,
                                       ExclusionReason::Metadata);
          body_start = region_end;
          break;
        }
        ls = le < n ? le + 1 : n;
      }
    }
  }

  std::size_t pos = body_start, gap = body_start;
  while (pos < n) {
    bool at_line_start = pos == 0 || text[pos - 1] == '\n';
    if (at_line_start) {
      std::size_t eol = line_end(text, pos);
      std::string_view line = text.substr(pos, eol - pos);
      if (options.mark_bibliography && is_bibliography_heading(line)) {
        builder.flush_gap(gap, pos);
        builder.scan_excluded_region(pos, n, ExclusionReason::Bibliography);
        pos = gap = n;
        break;
      }
      if (options.mark_figure_placeholders &&
          is_figure_placeholder_line(line)) {
        builder.flush_gap(gap, pos);
        builder.push_excluded_words(tokenize_words(line, pos),
                                    ExclusionReason::FigureCaptionPlaceholder,
                                    pos, eol);
        pos = gap = eol;
        continue;
      }
    }
    char c = text[pos];
    if (c == '$' || (c == '\\' && pos + 1 < n && text[pos + 1] == '[')) {
      MathOpen mo = find_math_close(text, pos, n);
      if (!mo.found)
        throw ParseError(ErrorKind::UnbalancedDelimiter, pos,
                         "unbalanced math delimiter at byte " +
                             std::to_string(pos));
      std::size_t ibegin = pos + mo.open_len;
      std::size_t send = mo.close_pos + mo.close_len;
      if (!blank_interior(text, ibegin, mo.close_pos)) {
        builder.flush_gap(gap, pos);
        builder.push_formula(
            make_formula(std::string(text.substr(ibegin,
                                                 mo.close_pos - ibegin)),
                         ibegin, {pos, send}),
            send);
        gap = send;
      }
      pos = send;
      continue;
    }
    if (c == '\\' && pos + 1 < n) {
      if (text[pos + 1] == '$') {  // escaped dollar, literal text
        pos += 2;
        continue;
      }
      if (text[pos + 1] == ']')
        throw ParseError(ErrorKind::UnbalancedDelimiter, pos,
                         "closing math delimiter without opener at byte " +
                             std::to_string(pos));
    }
    CodePoint cp = decode_utf8(text, pos);
    pos += cp.length == 0 ? 1 : cp.length;
  }
  builder.flush_gap(gap, n);

  chain_segment_ranges(doc.segments, n);
  doc.exclusions = coalesce_exclusions(doc.segments);
  alpha_canonicalize_document(doc.formulas);
  return doc;
}

Dictionary load_dictionary(std::string_view content) {
  Dictionary dict;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = line_end(content, pos);
    std::string_view line = trim_ascii(content.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') {
      if (eol >= content.size()) break;
      continue;
    }
    if (line.front() == '$') {
      std::string_view interior = line;
      if (interior.size() >= 4 && interior.substr(0, 2) == "$$" &&
          interior.substr(interior.size() - 2) == "$$") {
        interior = interior.substr(2, interior.size() - 4);
      } else if (interior.size() >= 2 && interior.back() == '$') {
        interior = interior.substr(1, interior.size() - 2);
      }
      try {
        dict.formula_patterns.push_back(make_formula(std::string(interior)));
      } catch (const ParseError&) {
        // not a usable formula entry; ignore
      }
    } else {
      Dictionary::Phrase phrase;
      phrase.original = std::string(line);
      for (auto& tok : tokenize_words(line))
        phrase.words.push_back(std::move(tok.normalized));
      if (!phrase.words.empty()) dict.phrases.push_back(std::move(phrase));
    }
    if (eol >= content.size()) break;
  }
  return dict;
}

Dictionary load_dictionary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read dictionary file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_dictionary(buf.str());
}

Document apply_phrase_exclusions(const Document& doc, const Dictionary& dict,
                                 ExclusionReason reason) {
  Document out;
  out.source_id = doc.source_id;
  out.raw_text = doc.raw_text;
  out.formulas = doc.formulas;
  out.segments.reserve(doc.segments.size());

  for (const auto& seg : doc.segments) {
    if (seg.kind == SegmentKind::Formula && seg.formula >= 0) {
      bool hit = false;
      const auto& canon = doc.formulas[seg.formula].canonical;
      for (const auto& pat : dict.formula_patterns)
        if (same_symbols(canon, pat.canonical)) {
          hit = true;
          break;
        }
      Segment copy = seg;
      if (hit) {
        copy.kind = SegmentKind::Excluded;
        copy.reason = reason;
      }
      out.segments.push_back(std::move(copy));
      continue;
    }
    if (seg.kind != SegmentKind::Words) {
      out.segments.push_back(seg);
      continue;
    }

    const auto& toks = seg.words;
    const std::size_t count = toks.size();
    std::vector<char> marked(count, 0);
    bool any = false;
    for (const auto& phrase : dict.phrases) {
      const std::size_t k = phrase.words.size();
      if (k == 0 || k > count) continue;
      for (std::size_t i = 0; i + k <= count; ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < k && hit; ++j)
          hit = toks[i + j].normalized == phrase.words[j];
        if (hit) {
          any = true;
          for (std::size_t j = 0; j < k; ++j) marked[i + j] = 1;
        }
      }
    }
    if (!any) {
      out.segments.push_back(seg);
      continue;
    }

    // split the segment into alternating kept / excluded runs; the pieces
    // keep tiling the original segment range
    std::size_t i = 0;
    std::size_t piece_begin = seg.range.begin;
    while (i < count) {
      std::size_t j = i;
      while (j < count && marked[j] == marked[i]) ++j;
      std::vector<WordToken> run(toks.begin() + i, toks.begin() + j);
      std::size_t piece_end =
          j == count ? seg.range.end : toks[j].bytes.begin;
      Segment piece;
      piece.range = {piece_begin, piece_end};
      piece.words = std::move(run);
      if (marked[i]) {
        piece.kind = SegmentKind::Excluded;
        piece.reason = reason;
      } else {
        piece.kind = SegmentKind::Words;
      }
      out.segments.push_back(std::move(piece));
      piece_begin = piece_end;
      i = j;
    }
  }

  out.exclusions = coalesce_exclusions(out.segments);
  return out;
}

}  // namespace eqsim
