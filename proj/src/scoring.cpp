#include "eqsim/scoring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "eqsim/unicode.hpp"

namespace eqsim {

void Policy::validate() const {
  if (word_min_match < 1)
    throw std::invalid_argument("word_min_match must be >= 1");
  if (symbol_min_match < 1)
    throw std::invalid_argument("symbol_min_match must be >= 1");
  if (letter_min_match < 1)
    throw std::invalid_argument("letter_min_match must be >= 1");
  if (formula_weight < 1)
    throw std::invalid_argument("formula_weight must be >= 1");
  if (min_formula_symbols < 0)
    throw std::invalid_argument("min_formula_symbols must be >= 0");
}

namespace {

struct Interner {
  std::map<std::string, std::int32_t> ids;

  std::int32_t get(const std::string& key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    std::int32_t id = static_cast<std::int32_t>(ids.size());
    ids.emplace(key, id);
    return id;
  }
};

std::string symbol_key(const MathSymbol& s) {
  std::string key(1, static_cast<char>('0' + static_cast<int>(s.kind)));
  key += ':';
  key += s.text;
  return key;
}

// Token stream of one granularity. Negative ids are unique break sentinels
// that keep matches from spanning formula or exclusion boundaries; they are
// not countable.
struct GranStream {
  std::vector<std::int32_t> ids;
  std::vector<ByteRange> bytes;
  std::vector<std::int64_t> countable;  // countable index or -1 for breaks
  std::int64_t total = 0;

  void push(std::int32_t id, ByteRange b) {
    ids.push_back(id);
    bytes.push_back(b);
    countable.push_back(total++);
  }
  void brk(std::int32_t& break_seq) {
    if (!ids.empty() && ids.back() < 0) return;
    ids.push_back(--break_seq);
    bytes.push_back({});
    countable.push_back(-1);
  }
};

struct DocStreams {
  GranStream words;
  GranStream symbols;
  std::vector<int> formulas;  // countable formula indices, reading order
  std::vector<ExclusionSpan> ledger;
};

bool exclusion_enabled(const ExclusionToggles& t, ExclusionReason r) {
  switch (r) {
    case ExclusionReason::Metadata:
      return t.metadata;
    case ExclusionReason::Bibliography:
      return t.bibliography;
    case ExclusionReason::TermDictionary:
      return t.term_dictionary;
    case ExclusionReason::StopPhrase:
      return t.stop_phrase;
    case ExclusionReason::FigureCaptionPlaceholder:
      return t.figure_caption;
    case ExclusionReason::ShortSequence:
      return t.short_sequences;
  }
  return true;
}

// Drops runs shorter than min_run from the stream entirely: they can never
// satisfy the match threshold, and keeping them in the denominator would
// stop identical documents from scoring 100. Applies uniformly to word,
// math-symbol, and letter streams.
void drop_short_runs(GranStream& stream, int min_run, std::int32_t& break_seq,
                     std::vector<ExclusionSpan>& ledger) {
  GranStream out;
  const std::size_t n = stream.ids.size();
  std::size_t i = 0;
  while (i < n) {
    if (stream.ids[i] < 0) {
      out.brk(break_seq);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && stream.ids[j] >= 0) ++j;
    if (static_cast<int>(j - i) < min_run) {
      ledger.push_back({{stream.bytes[i].begin, stream.bytes[j - 1].end},
                        ExclusionReason::ShortSequence});
      out.brk(break_seq);
    } else {
      for (std::size_t k = i; k < j; ++k)
        out.push(stream.ids[k], stream.bytes[k]);
    }
    i = j;
  }
  stream = std::move(out);
}

DocStreams build_streams(const Document& doc, const Policy& policy,
                         bool want_words, bool want_symbols,
                         Interner& word_ids, Interner& symbol_ids,
                         std::int32_t& break_seq) {
  DocStreams s;
  auto add_words = [&](const std::vector<WordToken>& toks) {
    if (!want_words) return;
    for (const auto& t : toks) s.words.push(word_ids.get(t.normalized), t.bytes);
  };
  auto add_formula = [&](int idx) {
    const FormulaSpan& f = doc.formulas[idx];
    if (want_words) s.words.brk(break_seq);
    if (static_cast<int>(f.canonical.size()) >= policy.min_formula_symbols)
      s.formulas.push_back(idx);
    if (want_symbols) {
      for (const auto& sym : f.fragments)
        s.symbols.push(symbol_ids.get(symbol_key(sym)), sym.bytes);
      s.symbols.brk(break_seq);
    }
  };

  for (const auto& seg : doc.segments) {
    switch (seg.kind) {
      case SegmentKind::Words:
        add_words(seg.words);
        break;
      case SegmentKind::Formula:
        add_formula(seg.formula);
        break;
      case SegmentKind::Excluded:
        if (exclusion_enabled(policy.exclude, seg.reason)) {
          if (want_words) s.words.brk(break_seq);
          if (want_symbols) s.symbols.brk(break_seq);
          bool formula_payload = seg.formula >= 0;
          if (!seg.range.empty() && (want_words || formula_payload))
            s.ledger.push_back({seg.range, seg.reason});
        } else if (seg.formula >= 0) {
          add_formula(seg.formula);
        } else {
          add_words(seg.words);
        }
        break;
    }
  }
  if (policy.exclude.short_sequences) {
    if (want_words)
      drop_short_runs(s.words, policy.word_min_match, break_seq, s.ledger);
    if (want_symbols)
      drop_short_runs(s.symbols, policy.symbol_min_match, break_seq, s.ledger);
  }
  return s;
}

void append_tiles(std::vector<ReportTile>& out, Granularity g,
                  const std::vector<Tile>& tiles, const GranStream& a,
                  const GranStream& b) {
  for (const auto& t : tiles) {
    ReportTile rt;
    rt.granularity = g;
    rt.a_start = a.countable[t.a_start];
    rt.a_len = t.len;
    rt.b_start = b.countable[t.b_start];
    rt.a_bytes = {a.bytes[t.a_start].begin, a.bytes[t.a_start + t.len - 1].end};
    rt.b_bytes = {b.bytes[t.b_start].begin, b.bytes[t.b_start + t.len - 1].end};
    out.push_back(rt);
  }
}

void collect_ledger(SimilarityReport& report, const DocStreams& a,
                    const DocStreams& b) {
  for (const auto& span : a.ledger) report.excluded_ledger.push_back({'a', span});
  for (const auto& span : b.ledger) report.excluded_ledger.push_back({'b', span});
  std::stable_sort(report.excluded_ledger.begin(),
                   report.excluded_ledger.end(),
                   [](const LedgerEntry& x, const LedgerEntry& y) {
                     if (x.side != y.side) return x.side < y.side;
                     return x.span.bytes.begin < y.span.bytes.begin;
                   });
}

void finalize_indices(SimilarityReport& report) {
  report.si_a_given_b =
      recompute_index(report.mode, report.counts_a, report.policy.formula_weight);
  report.si_b_given_a =
      recompute_index(report.mode, report.counts_b, report.policy.formula_weight);
}

// Count formulas of `own` that have an equal partner in `other`; each
// matched formula also records an (own, other) pair with its first equal
// partner.
std::int64_t match_formulas(const Document& own_doc,
                            const std::vector<int>& own,
                            const Document& other_doc,
                            const std::vector<int>& other, bool alpha,
                            std::vector<std::pair<int, int>>& pairs) {
  std::int64_t matched = 0;
  for (int i : own) {
    for (int j : other) {
      if (formulas_equal(own_doc.formulas[i], other_doc.formulas[j], alpha)) {
        ++matched;
        pairs.emplace_back(i, j);
        break;
      }
    }
  }
  return matched;
}

// Pairs from both directions, as (a index, b index), deduplicated so every
// matched formula on either side appears in at least one pair.
void merge_formula_pairs(SimilarityReport& report,
                         std::vector<std::pair<int, int>>& forward,
                         std::vector<std::pair<int, int>>& reverse) {
  auto& out = report.matched_formula_pairs;
  out = std::move(forward);
  for (const auto& [jb, ia] : reverse) out.emplace_back(ia, jb);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

double recompute_index(Mode mode, const DirectionCounts& c,
                       int formula_weight) {
  std::int64_t num = 0, den = 0;
  switch (mode) {
    case Mode::Fragment:
      num = c.words_matched + c.symbols_matched;
      den = c.words_total + c.symbols_total;
      break;
    case Mode::Method1:
      num = c.formulas_matched;
      den = c.formulas_total;
      break;
    case Mode::Method2:
      num = c.words_matched + formula_weight * c.formulas_matched;
      den = c.words_total + formula_weight * c.formulas_total;
      break;
    case Mode::LetterDemo:
      num = c.symbols_matched;
      den = c.symbols_total;
      break;
  }
  if (den <= 0) return 0.0;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

SimilarityReport score_fragment(const Document& a, const Document& b,
                                const Policy& policy) {
  policy.validate();
  SimilarityReport report;
  report.mode = Mode::Fragment;
  report.policy = policy;
  report.policy.mode = Mode::Fragment;

  Interner word_ids, symbol_ids;
  std::int32_t break_seq = 0;
  DocStreams sa = build_streams(a, policy, true, true, word_ids, symbol_ids,
                                break_seq);
  DocStreams sb = build_streams(b, policy, true, true, word_ids, symbol_ids,
                                break_seq);

  auto word_tiles =
      greedy_string_tiling(sa.words.ids, sb.words.ids, policy.word_min_match);
  auto symbol_tiles = greedy_string_tiling(sa.symbols.ids, sb.symbols.ids,
                                           policy.symbol_min_match);
  std::int64_t cw = covered_length(word_tiles);
  std::int64_t cs = covered_length(symbol_tiles);

  for (auto [counts, streams] :
       {std::pair{&report.counts_a, &sa}, std::pair{&report.counts_b, &sb}}) {
    counts->words_total = streams->words.total;
    counts->words_matched = cw;
    counts->symbols_total = streams->symbols.total;
    counts->symbols_matched = cs;
    counts->formulas_total = static_cast<std::int64_t>(streams->formulas.size());
  }
  report.zero_denominator_a =
      report.counts_a.words_total + report.counts_a.symbols_total == 0;
  report.zero_denominator_b =
      report.counts_b.words_total + report.counts_b.symbols_total == 0;

  append_tiles(report.tiles, Granularity::Word, word_tiles, sa.words, sb.words);
  append_tiles(report.tiles, Granularity::MathSymbol, symbol_tiles, sa.symbols,
               sb.symbols);
  collect_ledger(report, sa, sb);
  finalize_indices(report);
  return report;
}

SimilarityReport score_method1(const Document& a, const Document& b,
                               const Policy& policy) {
  policy.validate();
  SimilarityReport report;
  report.mode = Mode::Method1;
  report.policy = policy;
  report.policy.mode = Mode::Method1;

  Interner word_ids, symbol_ids;
  std::int32_t break_seq = 0;
  DocStreams sa = build_streams(a, policy, false, false, word_ids, symbol_ids,
                                break_seq);
  DocStreams sb = build_streams(b, policy, false, false, word_ids, symbol_ids,
                                break_seq);

  report.counts_a.formulas_total = static_cast<std::int64_t>(sa.formulas.size());
  report.counts_b.formulas_total = static_cast<std::int64_t>(sb.formulas.size());
  std::vector<std::pair<int, int>> forward, reverse;
  report.counts_a.formulas_matched =
      match_formulas(a, sa.formulas, b, sb.formulas, policy.alpha, forward);
  report.counts_b.formulas_matched =
      match_formulas(b, sb.formulas, a, sa.formulas, policy.alpha, reverse);
  merge_formula_pairs(report, forward, reverse);
  report.zero_denominator_a = report.counts_a.formulas_total == 0;
  report.zero_denominator_b = report.counts_b.formulas_total == 0;

  collect_ledger(report, sa, sb);
  finalize_indices(report);
  return report;
}

SimilarityReport score_method2(const Document& a, const Document& b,
                               const Policy& policy) {
  policy.validate();
  SimilarityReport report;
  report.mode = Mode::Method2;
  report.policy = policy;
  report.policy.mode = Mode::Method2;

  Interner word_ids, symbol_ids;
  std::int32_t break_seq = 0;
  DocStreams sa = build_streams(a, policy, true, false, word_ids, symbol_ids,
                                break_seq);
  DocStreams sb = build_streams(b, policy, true, false, word_ids, symbol_ids,
                                break_seq);

  auto word_tiles =
      greedy_string_tiling(sa.words.ids, sb.words.ids, policy.word_min_match);
  std::int64_t cw = covered_length(word_tiles);

  report.counts_a.words_total = sa.words.total;
  report.counts_b.words_total = sb.words.total;
  report.counts_a.words_matched = cw;
  report.counts_b.words_matched = cw;
  report.counts_a.formulas_total = static_cast<std::int64_t>(sa.formulas.size());
  report.counts_b.formulas_total = static_cast<std::int64_t>(sb.formulas.size());
  std::vector<std::pair<int, int>> forward, reverse;
  report.counts_a.formulas_matched =
      match_formulas(a, sa.formulas, b, sb.formulas, policy.alpha, forward);
  report.counts_b.formulas_matched =
      match_formulas(b, sb.formulas, a, sa.formulas, policy.alpha, reverse);
  merge_formula_pairs(report, forward, reverse);

  const int w = policy.formula_weight;
  report.zero_denominator_a =
      report.counts_a.words_total + w * report.counts_a.formulas_total == 0;
  report.zero_denominator_b =
      report.counts_b.words_total + w * report.counts_b.formulas_total == 0;

  append_tiles(report.tiles, Granularity::Word, word_tiles, sa.words, sb.words);
  collect_ledger(report, sa, sb);
  finalize_indices(report);
  return report;
}

SimilarityReport letter_fragment_demo(std::string_view phrase_a,
                                      std::string_view phrase_b,
                                      int min_match) {
  if (min_match < 1) throw std::invalid_argument("min_match must be >= 1");
  SimilarityReport report;
  report.mode = Mode::LetterDemo;
  report.policy.mode = Mode::LetterDemo;
  report.policy.letter_min_match = min_match;

  Interner letter_ids;
  auto build = [&](std::string_view phrase) {
    GranStream s;
    std::size_t pos = 0;
    while (pos < phrase.size()) {
      CodePoint cp = decode_utf8(phrase, pos);
      std::size_t step = cp.length == 0 ? 1 : cp.length;
      if (cp.length != 0 && !is_space(cp.value)) {
        std::string key;
        append_utf8(key, to_lower(cp.value));
        s.push(letter_ids.get(key), {pos, pos + step});
      }
      pos += step;
    }
    return s;
  };
  GranStream sa = build(phrase_a);
  GranStream sb = build(phrase_b);
  if (report.policy.exclude.short_sequences) {
    std::int32_t break_seq = 0;
    std::vector<ExclusionSpan> dropped_a, dropped_b;
    drop_short_runs(sa, min_match, break_seq, dropped_a);
    drop_short_runs(sb, min_match, break_seq, dropped_b);
    for (const auto& span : dropped_a)
      report.excluded_ledger.push_back({'a', span});
    for (const auto& span : dropped_b)
      report.excluded_ledger.push_back({'b', span});
  }

  auto tiles = greedy_string_tiling(sa.ids, sb.ids, min_match);
  std::int64_t covered = covered_length(tiles);
  report.counts_a.symbols_total = sa.total;
  report.counts_b.symbols_total = sb.total;
  report.counts_a.symbols_matched = covered;
  report.counts_b.symbols_matched = covered;
  report.zero_denominator_a = sa.total == 0;
  report.zero_denominator_b = sb.total == 0;

  append_tiles(report.tiles, Granularity::Letter, tiles, sa, sb);
  finalize_indices(report);
  return report;
}

SimilarityReport score(const Document& a, const Document& b,
                       const Policy& policy) {
  switch (policy.mode) {
    case Mode::Fragment:
      return score_fragment(a, b, policy);
    case Mode::Method1:
      return score_method1(a, b, policy);
    case Mode::Method2:
      return score_method2(a, b, policy);
    case Mode::LetterDemo:
      return letter_fragment_demo(a.raw_text, b.raw_text,
                                  policy.letter_min_match);
  }
  throw std::invalid_argument("unknown scoring mode");
}

}  // namespace eqsim
