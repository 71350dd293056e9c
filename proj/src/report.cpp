#include "eqsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace eqsim {

using nlohmann::json;

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

namespace {

template <typename Enum>
struct NameEntry {
  Enum value;
  std::string_view name;
};

constexpr NameEntry<Mode> kModeNames[] = {
    {Mode::Fragment, "fragment"},
    {Mode::Method1, "method1"},
    {Mode::Method2, "method2"},
    {Mode::LetterDemo, "letter_demo"},
};

constexpr NameEntry<Granularity> kGranularityNames[] = {
    {Granularity::Word, "word"},
    {Granularity::MathSymbol, "math_symbol"},
    {Granularity::Letter, "letter"},
};

constexpr NameEntry<ExclusionReason> kReasonNames[] = {
    {ExclusionReason::Metadata, "metadata"},
    {ExclusionReason::Bibliography, "bibliography"},
    {ExclusionReason::TermDictionary, "term_dictionary"},
    {ExclusionReason::StopPhrase, "stop_phrase"},
    {ExclusionReason::FigureCaptionPlaceholder, "figure_caption_placeholder"},
    {ExclusionReason::ShortSequence, "short_sequence"},
};

constexpr NameEntry<RenderFormat> kFormatNames[] = {
    {RenderFormat::Text, "text"},
    {RenderFormat::Html, "html"},
    {RenderFormat::Json, "json"},
};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameEntry<Enum> (&table)[N], Enum value) {
  for (const auto& e : table)
    if (e.value == value) return e.name;
  return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const NameEntry<Enum> (&table)[N],
                             std::string_view name) {
  for (const auto& e : table)
    if (e.name == name) return e.value;
  return std::nullopt;
}

template <typename Enum, std::size_t N>
Enum value_or_throw(const NameEntry<Enum> (&table)[N], const std::string& name,
                    const char* what) {
  for (const auto& e : table)
    if (e.name == name) return e.value;
  throw std::runtime_error(std::string("unknown ") + what + ": " + name);
}

json range_to_json(const ByteRange& r) { return json::array({r.begin, r.end}); }

ByteRange range_from_json(const json& j) {
  return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

json toggles_to_json(const ExclusionToggles& t) {
  return {{"metadata", t.metadata},
          {"bibliography", t.bibliography},
          {"term_dictionary", t.term_dictionary},
          {"stop_phrase", t.stop_phrase},
          {"figure_caption", t.figure_caption},
          {"short_sequences", t.short_sequences}};
}

ExclusionToggles toggles_from_json(const json& j) {
  ExclusionToggles t;
  t.metadata = j.at("metadata").get<bool>();
  t.bibliography = j.at("bibliography").get<bool>();
  t.term_dictionary = j.at("term_dictionary").get<bool>();
  t.stop_phrase = j.at("stop_phrase").get<bool>();
  t.figure_caption = j.at("figure_caption").get<bool>();
  t.short_sequences = j.at("short_sequences").get<bool>();
  return t;
}

json policy_to_json(const Policy& p) {
  return {{"mode", std::string(mode_name(p.mode))},
          {"word_min_match", p.word_min_match},
          {"symbol_min_match", p.symbol_min_match},
          {"letter_min_match", p.letter_min_match},
          {"formula_weight", p.formula_weight},
          {"alpha", p.alpha},
          {"min_formula_symbols", p.min_formula_symbols},
          {"exclude", toggles_to_json(p.exclude)}};
}

Policy policy_from_json(const json& j) {
  Policy p;
  p.mode = value_or_throw(kModeNames, j.at("mode").get<std::string>(), "mode");
  p.word_min_match = j.at("word_min_match").get<int>();
  p.symbol_min_match = j.at("symbol_min_match").get<int>();
  p.letter_min_match = j.at("letter_min_match").get<int>();
  p.formula_weight = j.at("formula_weight").get<int>();
  p.alpha = j.at("alpha").get<bool>();
  p.min_formula_symbols = j.at("min_formula_symbols").get<int>();
  p.exclude = toggles_from_json(j.at("exclude"));
  return p;
}

json counts_to_json(const DirectionCounts& c) {
  return {{"words_total", c.words_total},
          {"words_matched", c.words_matched},
          {"symbols_total", c.symbols_total},
          {"symbols_matched", c.symbols_matched},
          {"formulas_total", c.formulas_total},
          {"formulas_matched", c.formulas_matched}};
}

DirectionCounts counts_from_json(const json& j) {
  DirectionCounts c;
  c.words_total = j.at("words_total").get<std::int64_t>();
  c.words_matched = j.at("words_matched").get<std::int64_t>();
  c.symbols_total = j.at("symbols_total").get<std::int64_t>();
  c.symbols_matched = j.at("symbols_matched").get<std::int64_t>();
  c.formulas_total = j.at("formulas_total").get<std::int64_t>();
  c.formulas_matched = j.at("formulas_matched").get<std::int64_t>();
  return c;
}

}  // namespace

std::string_view mode_name(Mode mode) { return name_of(kModeNames, mode); }
std::optional<Mode> mode_from_name(std::string_view name) {
  return value_of(kModeNames, name);
}
std::string_view granularity_name(Granularity granularity) {
  return name_of(kGranularityNames, granularity);
}
std::optional<Granularity> granularity_from_name(std::string_view name) {
  return value_of(kGranularityNames, name);
}
std::string_view reason_name(ExclusionReason reason) {
  return name_of(kReasonNames, reason);
}
std::optional<ExclusionReason> reason_from_name(std::string_view name) {
  return value_of(kReasonNames, name);
}
std::string_view format_name(RenderFormat format) {
  return name_of(kFormatNames, format);
}
std::optional<RenderFormat> format_from_name(std::string_view name) {
  return value_of(kFormatNames, name);
}

json report_to_json(const SimilarityReport& r) {
  json tiles = json::array();
  for (const auto& t : r.tiles)
    tiles.push_back({{"granularity", std::string(granularity_name(t.granularity))},
                     {"a_start", t.a_start},
                     {"a_len", t.a_len},
                     {"b_start", t.b_start},
                     {"a_bytes", range_to_json(t.a_bytes)},
                     {"b_bytes", range_to_json(t.b_bytes)}});
  json pairs = json::array();
  for (const auto& [fa, fb] : r.matched_formula_pairs)
    pairs.push_back(json::array({fa, fb}));
  json ledger = json::array();
  for (const auto& e : r.excluded_ledger)
    ledger.push_back({{"side", std::string(1, e.side)},
                      {"begin", e.span.bytes.begin},
                      {"end", e.span.bytes.end},
                      {"reason", std::string(reason_name(e.span.reason))}});
  return {{"mode", std::string(mode_name(r.mode))},
          {"policy", policy_to_json(r.policy)},
          {"si_a_given_b", r.si_a_given_b},
          {"si_b_given_a", r.si_b_given_a},
          {"zero_denominator_a", r.zero_denominator_a},
          {"zero_denominator_b", r.zero_denominator_b},
          {"counts_a", counts_to_json(r.counts_a)},
          {"counts_b", counts_to_json(r.counts_b)},
          {"tiles", tiles},
          {"matched_formula_pairs", pairs},
          {"excluded_ledger", ledger}};
}

SimilarityReport report_from_json(const json& j) {
  SimilarityReport r;
  r.mode = value_or_throw(kModeNames, j.at("mode").get<std::string>(), "mode");
  r.policy = policy_from_json(j.at("policy"));
  r.si_a_given_b = j.at("si_a_given_b").get<double>();
  r.si_b_given_a = j.at("si_b_given_a").get<double>();
  r.zero_denominator_a = j.at("zero_denominator_a").get<bool>();
  r.zero_denominator_b = j.at("zero_denominator_b").get<bool>();
  r.counts_a = counts_from_json(j.at("counts_a"));
  r.counts_b = counts_from_json(j.at("counts_b"));
  for (const auto& t : j.at("tiles")) {
    ReportTile rt;
    rt.granularity = value_or_throw(
        kGranularityNames, t.at("granularity").get<std::string>(), "granularity");
    rt.a_start = t.at("a_start").get<std::int64_t>();
    rt.a_len = t.at("a_len").get<std::int64_t>();
    rt.b_start = t.at("b_start").get<std::int64_t>();
    rt.a_bytes = range_from_json(t.at("a_bytes"));
    rt.b_bytes = range_from_json(t.at("b_bytes"));
    r.tiles.push_back(rt);
  }
  for (const auto& p : j.at("matched_formula_pairs"))
    r.matched_formula_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  for (const auto& e : j.at("excluded_ledger")) {
    std::string side = e.at("side").get<std::string>();
    if (side != "a" && side != "b")
      throw std::runtime_error("ledger side must be \"a\" or \"b\"");
    LedgerEntry entry;
    entry.side = side[0];
    entry.span.bytes = {e.at("begin").get<std::size_t>(),
                        e.at("end").get<std::size_t>()};
    entry.span.reason = value_or_throw(
        kReasonNames, e.at("reason").get<std::string>(), "exclusion reason");
    r.excluded_ledger.push_back(entry);
  }
  return r;
}

namespace {

// A byte interval of one document to paint: a match (tile or equal formula)
// or an exclusion.
struct PaintSpan {
  ByteRange bytes;
  bool match = false;
  ExclusionReason reason = ExclusionReason::Metadata;
};

std::vector<PaintSpan> paint_spans(const SimilarityReport& r,
                                   const Document& doc, char side) {
  std::vector<PaintSpan> v;
  for (const auto& t : r.tiles) {
    ByteRange bytes = side == 'a' ? t.a_bytes : t.b_bytes;
    if (!bytes.empty()) v.push_back({bytes, true, {}});
  }
  for (const auto& [fa, fb] : r.matched_formula_pairs) {
    int idx = side == 'a' ? fa : fb;
    if (idx < 0 || idx >= static_cast<int>(doc.formulas.size())) continue;
    ByteRange bytes = doc.formulas[idx].span;
    if (!bytes.empty()) v.push_back({bytes, true, {}});
  }
  for (const auto& e : r.excluded_ledger)
    if (e.side == side && !e.span.bytes.empty())
      v.push_back({e.span.bytes, false, e.span.reason});
  std::sort(v.begin(), v.end(), [](const PaintSpan& x, const PaintSpan& y) {
    if (x.bytes.begin != y.bytes.begin) return x.bytes.begin < y.bytes.begin;
    return x.bytes.end > y.bytes.end;
  });
  std::vector<PaintSpan> out;
  std::size_t cursor = 0;
  for (const auto& s : v) {
    if (s.bytes.begin < cursor || s.bytes.end > doc.raw_text.size()) continue;
    out.push_back(s);
    cursor = s.bytes.end;
  }
  return out;
}

void append_ansi_text(std::string& out, const std::string& text,
                      const std::vector<PaintSpan>& spans) {
  std::size_t pos = 0;
  for (const auto& s : spans) {
    out.append(text, pos, s.bytes.begin - pos);
    out += s.match ? "\x1b[31m" : "\x1b[90m";
    out.append(text, s.bytes.begin, s.bytes.size());
    out += "\x1b[0m";
    pos = s.bytes.end;
  }
  out.append(text, pos, text.size() - pos);
}

std::string counts_line(const DirectionCounts& c) {
  std::string out;
  out += "words " + std::to_string(c.words_matched) + "/" +
         std::to_string(c.words_total);
  out += "  symbols " + std::to_string(c.symbols_matched) + "/" +
         std::to_string(c.symbols_total);
  out += "  formulas " + std::to_string(c.formulas_matched) + "/" +
         std::to_string(c.formulas_total);
  return out;
}

std::string render_text(const SimilarityReport& r, const Document& a,
                        const Document& b) {
  std::string out;
  out += "similarity report (" + std::string(mode_name(r.mode)) + ")\n";
  out += "  a: " + a.source_id + "\n";
  out += "  b: " + b.source_id + "\n";
  out += "  si(a|b): " + format_percent(r.si_a_given_b) + "%";
  if (r.zero_denominator_a) out += " (empty input)";
  out += "\n";
  out += "  si(b|a): " + format_percent(r.si_b_given_a) + "%";
  if (r.zero_denominator_b) out += " (empty input)";
  out += "\n";
  out += "  counts (matched/total):\n";
  out += "    a: " + counts_line(r.counts_a) + "\n";
  out += "    b: " + counts_line(r.counts_b) + "\n";
  if (!r.excluded_ledger.empty()) {
    out += "  excluded:\n";
    for (const auto& e : r.excluded_ledger) {
      out += "    ";
      out += e.side;
      out += " [" + std::to_string(e.span.bytes.begin) + "-" +
             std::to_string(e.span.bytes.end) + ") " +
             std::string(reason_name(e.span.reason)) + "\n";
    }
  }
  out += "\n--- a: " + a.source_id + " ---\n";
  append_ansi_text(out, a.raw_text, paint_spans(r, a, 'a'));
  if (out.back() != '\n') out += "\n";
  out += "\n--- b: " + b.source_id + " ---\n";
  append_ansi_text(out, b.raw_text, paint_spans(r, b, 'b'));
  if (out.back() != '\n') out += "\n";
  return out;
}

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void append_html_text(std::string& out, const std::string& text,
                      const std::vector<PaintSpan>& spans) {
  std::size_t pos = 0;
  for (const auto& s : spans) {
    out += escape_html(
        std::string_view(text).substr(pos, s.bytes.begin - pos));
    if (s.match) {
      out += "<span data-range=\"" + std::to_string(s.bytes.begin) + "-" +
             std::to_string(s.bytes.end) +
             "\" style=\"background:#ffd6d6;color:#a00000\">";
    } else {
      out += "<span data-excluded=\"" +
             std::string(reason_name(s.reason)) +
             "\" style=\"color:#999999\">";
    }
    out += escape_html(
        std::string_view(text).substr(s.bytes.begin, s.bytes.size()));
    out += "</span>";
    pos = s.bytes.end;
  }
  out += escape_html(std::string_view(text).substr(pos));
}

std::string render_html(const SimilarityReport& r, const Document& a,
                        const Document& b) {
  const char* cell = " style=\"border:1px solid #ccc;padding:0.3em 0.7em;"
                     "text-align:left\"";
  std::string out;
  out += "<!doctype html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>similarity report</title>\n</head>\n";
  out += "<body style=\"font-family:sans-serif;max-width:60em;margin:2em auto\">\n";
  out += "<h1>similarity report (" + std::string(mode_name(r.mode)) + ")</h1>\n";
  out += "<table style=\"border-collapse:collapse\">\n<tr>";
  for (const char* h : {"direction", "index", "words", "symbols", "formulas"})
    out += "<th" + std::string(cell) + ">" + h + "</th>";
  out += "</tr>\n";
  struct Row {
    const char* label;
    double si;
    bool zero;
    const DirectionCounts* c;
  };
  for (const Row& row : {Row{"si(a|b)", r.si_a_given_b, r.zero_denominator_a,
                             &r.counts_a},
                         Row{"si(b|a)", r.si_b_given_a, r.zero_denominator_b,
                             &r.counts_b}}) {
    out += "<tr><td" + std::string(cell) + ">" + row.label + "</td>";
    out += "<td" + std::string(cell) + ">" + format_percent(row.si) + "%" +
           (row.zero ? " (empty input)" : "") + "</td>";
    out += "<td" + std::string(cell) + ">" + std::to_string(row.c->words_matched) +
           "/" + std::to_string(row.c->words_total) + "</td>";
    out += "<td" + std::string(cell) + ">" +
           std::to_string(row.c->symbols_matched) + "/" +
           std::to_string(row.c->symbols_total) + "</td>";
    out += "<td" + std::string(cell) + ">" +
           std::to_string(row.c->formulas_matched) + "/" +
           std::to_string(row.c->formulas_total) + "</td></tr>\n";
  }
  out += "</table>\n";
  out += "<h2>a: " + escape_html(a.source_id) + "</h2>\n";
  out += "<pre style=\"white-space:pre-wrap;border:1px solid #ddd;"
         "padding:1em\">";
  append_html_text(out, a.raw_text, paint_spans(r, a, 'a'));
  out += "</pre>\n";
  out += "<h2>b: " + escape_html(b.source_id) + "</h2>\n";
  out += "<pre style=\"white-space:pre-wrap;border:1px solid #ddd;"
         "padding:1em\">";
  append_html_text(out, b.raw_text, paint_spans(r, b, 'b'));
  out += "</pre>\n</body>\n</html>\n";
  return out;
}

}  // namespace

std::string render(const SimilarityReport& report, const Document& a,
                   const Document& b, RenderFormat format) {
  switch (format) {
    case RenderFormat::Text:
      return render_text(report, a, b);
    case RenderFormat::Html:
      return render_html(report, a, b);
    case RenderFormat::Json:
      return report_to_json(report).dump(2) + "\n";
  }
  throw std::invalid_argument("unknown render format");
}

std::string fixture_table(const std::vector<FixtureRow>& rows) {
  auto rpad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  auto lpad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::size_t name_w = 4;
  for (const auto& r : rows) name_w = std::max(name_w, r.name.size());
  const std::size_t cell_w = 7;
  const std::size_t block_w = 2 * cell_w + 2;
  const char* labels[] = {"fragment", "method1", "method2", "letters"};

  std::string out = std::string(name_w, ' ');
  for (const char* label : labels) out += "  " + lpad(label, block_w);
  out += "\n" + rpad("name", name_w);
  for (int i = 0; i < 4; ++i)
    out += "  " + lpad("a|b", cell_w) + "  " + lpad("b|a", cell_w);
  out += "\n" + std::string(name_w + 4 * (block_w + 2), '-') + "\n";

  for (const auto& r : rows) {
    out += rpad(r.name, name_w);
    for (const FixtureCell* cell :
         {&r.fragment, &r.method1, &r.method2, &r.letters}) {
      if (cell->present) {
        out += "  " + lpad(format_percent(cell->a_given_b), cell_w) + "  " +
               lpad(format_percent(cell->b_given_a), cell_w);
      } else {
        out += "  " + lpad("-", cell_w) + "  " + lpad("-", cell_w);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace eqsim
