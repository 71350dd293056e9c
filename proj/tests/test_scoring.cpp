#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "eqsim/fixtures.hpp"
#include "eqsim/scoring.hpp"
#include "support.hpp"

using namespace eqsim;
using support::find_pair;

namespace {

Document parse_pair_side(std::string_view name, bool side_a) {
  const auto& pair = find_pair(name);
  return parse_document(side_a ? pair.text_a : pair.text_b);
}

Policy policy_for(Mode mode) {
  Policy p;
  p.mode = mode;
  return p;
}

}  // namespace

TEST_CASE("doubled-subscript pair: fragment mode sees near-identity") {
  Document wave = parse_document(fixtures::wave_equation_doc());
  Document heat = parse_document(fixtures::heat_equation_doc());
  auto report = score_fragment(wave, heat, policy_for(Mode::Fragment));

  CHECK(report.si_a_given_b == 100.0 * 7 / 8);
  CHECK(report.si_b_given_a == 100.0 * 7 / 7);
  CHECK(report.counts_a.symbols_matched == 7);
  CHECK(report.counts_a.symbols_total == 8);
  CHECK(report.counts_b.symbols_matched == 7);
  CHECK(report.counts_b.symbols_total == 7);
  CHECK(report.counts_a.words_total == 0);

  // The same two equations are completely different whole formulas.
  auto m1 = score_method1(wave, heat, policy_for(Mode::Method1));
  CHECK(m1.si_a_given_b == 0.0);
  CHECK(m1.si_b_given_a == 0.0);
}

TEST_CASE("grouping-blind pairs: fragment 100 both ways, whole-formula 0") {
  for (const char* name : {"radical-grouping", "negative-exponent"}) {
    Document a = parse_pair_side(name, true);
    Document b = parse_pair_side(name, false);

    auto frag = score_fragment(a, b, policy_for(Mode::Fragment));
    CHECK(frag.si_a_given_b == 100.0);
    CHECK(frag.si_b_given_a == 100.0);

    auto m1 = score_method1(a, b, policy_for(Mode::Method1));
    CHECK(m1.si_a_given_b == 0.0);
    CHECK(m1.si_b_given_a == 0.0);
    CHECK(m1.counts_a.formulas_total == 1);
    CHECK(m1.counts_a.formulas_matched == 0);
    CHECK(m1.matched_formula_pairs.empty());
  }
}

TEST_CASE("bracketed-operator pair under fragment and whole-formula modes") {
  Document a = parse_pair_side("diffusion-vs-wave", true);
  Document b = parse_pair_side("diffusion-vs-wave", false);

  auto frag = score_fragment(a, b, policy_for(Mode::Fragment));
  CHECK(frag.si_a_given_b == 100.0 * 11 / 11);
  CHECK(frag.si_b_given_a == 100.0 * 11 / 12);

  auto m1 = score_method1(a, b, policy_for(Mode::Method1));
  CHECK(m1.si_a_given_b == 0.0);
  CHECK(m1.si_b_given_a == 0.0);
}

TEST_CASE("two-variant article: fragment mode counts and indices") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());
  auto report = score_fragment(v1, v2, policy_for(Mode::Fragment));

  CHECK(report.counts_a.words_total == 45);
  CHECK(report.counts_a.words_matched == 30);
  CHECK(report.counts_a.symbols_total == 94);
  CHECK(report.counts_a.symbols_matched == 62);
  CHECK(report.counts_b.words_total == 44);
  CHECK(report.counts_b.words_matched == 30);
  CHECK(report.counts_b.symbols_total == 66);
  CHECK(report.counts_b.symbols_matched == 62);

  CHECK(report.si_a_given_b == 100.0 * (30 + 62) / (45 + 94));
  CHECK(report.si_b_given_a == 100.0 * (30 + 62) / (44 + 66));

  // The lone single-symbol formula can never meet the two-symbol match
  // floor, so it lands in the ledger instead of the denominator.
  bool short_symbol_entry = false;
  for (const auto& entry : report.excluded_ledger)
    if (entry.span.reason == ExclusionReason::ShortSequence &&
        entry.span.bytes.size() == 1)
      short_symbol_entry = true;
  CHECK(short_symbol_entry);
}

TEST_CASE("two-variant article: whole-formula and weighted-hybrid modes") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());

  auto m1 = score_method1(v1, v2, policy_for(Mode::Method1));
  CHECK(m1.counts_a.formulas_total == 11);
  CHECK(m1.counts_a.formulas_matched == 4);
  CHECK(m1.counts_b.formulas_total == 7);
  CHECK(m1.counts_b.formulas_matched == 4);
  CHECK(m1.si_a_given_b == 100.0 * 4 / 11);
  CHECK(m1.si_b_given_a == 100.0 * 4 / 7);
  CHECK(m1.counts_a.words_total == 0);

  auto m2 = score_method2(v1, v2, policy_for(Mode::Method2));
  CHECK(m2.si_a_given_b == 100.0 * (30 + 8 * 4) / (45 + 8 * 11));
  CHECK(m2.si_b_given_a == 100.0 * (30 + 8 * 4) / (44 + 8 * 7));

  // Fragment mode overshoots the hybrid in both directions on this pair.
  auto frag = score_fragment(v1, v2, policy_for(Mode::Fragment));
  CHECK(frag.si_a_given_b > m2.si_a_given_b);
  CHECK(frag.si_b_given_a > m2.si_b_given_a);
}

TEST_CASE("weighted hybrid reaches whole-formula behavior as w grows") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());

  Policy w1 = policy_for(Mode::Method2);
  w1.formula_weight = 1;
  auto report = score_method2(v1, v2, w1);
  CHECK(report.si_a_given_b == 100.0 * (30 + 4) / (45 + 11));
  CHECK(report.si_b_given_a == 100.0 * (30 + 4) / (44 + 7));

  Policy heavy = policy_for(Mode::Method2);
  heavy.formula_weight = 1000;
  auto heavy_report = score_method2(v1, v2, heavy);
  auto m1 = score_method1(v1, v2, policy_for(Mode::Method1));
  CHECK(heavy_report.si_a_given_b ==
        doctest::Approx(m1.si_a_given_b).epsilon(0.01));
}

TEST_CASE("thirty-formula gallery: six equal rows per side") {
  Document left = parse_document(fixtures::formula_gallery_a());
  Document right = parse_document(fixtures::formula_gallery_b());

  auto m1 = score_method1(left, right, policy_for(Mode::Method1));
  CHECK(m1.counts_a.formulas_total == 30);
  CHECK(m1.counts_a.formulas_matched == 6);
  CHECK(m1.counts_b.formulas_total == 30);
  CHECK(m1.counts_b.formulas_matched == 6);
  CHECK(m1.si_a_given_b == 20.0);
  CHECK(m1.si_b_given_a == 20.0);

  auto m2 = score_method2(left, right, policy_for(Mode::Method2));
  CHECK(m2.si_a_given_b == 20.0);  // no words on either side
  CHECK(m2.si_b_given_a == 20.0);

  auto frag = score_fragment(left, right, policy_for(Mode::Fragment));
  CHECK(frag.counts_a.symbols_total == 336);
  CHECK(frag.counts_a.symbols_matched == 334);
  CHECK(frag.counts_b.symbols_total == 349);
  CHECK(frag.counts_b.symbols_matched == 334);
  CHECK(frag.si_a_given_b == 100.0 * 334 / 336);
  CHECK(frag.si_b_given_a == 100.0 * 334 / 349);
  CHECK(frag.si_a_given_b > m2.si_a_given_b);
  CHECK(frag.si_b_given_a > m2.si_b_given_a);
}

TEST_CASE("letter demo pins the container/solution phrases") {
  auto report = letter_fragment_demo(fixtures::letter_phrase_a(),
                                     fixtures::letter_phrase_b());
  CHECK(report.counts_a.symbols_total == 24);
  CHECK(report.counts_a.symbols_matched == 16);
  CHECK(report.counts_b.symbols_total == 27);
  CHECK(report.counts_b.symbols_matched == 16);
  CHECK(report.si_a_given_b == 100.0 * 16 / 24);
  CHECK(report.si_b_given_a == 100.0 * 16 / 27);
  CHECK(report.si_a_given_b >= 60.0);
  CHECK(report.si_a_given_b <= 75.0);

  auto loose = letter_fragment_demo(fixtures::letter_phrase_a(),
                                    fixtures::letter_phrase_b(), 2);
  CHECK(loose.si_a_given_b == 100.0 * 20 / 24);
  CHECK(loose.si_b_given_a == 100.0 * 20 / 27);

  auto self = letter_fragment_demo("The solute was in a container",
                                   "The solute was in a container");
  CHECK(self.si_a_given_b == 100.0);
  CHECK(self.si_b_given_a == 100.0);

  auto disjoint = letter_fragment_demo("abc", "xyz", 1);
  CHECK(disjoint.si_a_given_b == 0.0);
  CHECK(disjoint.si_b_given_a == 0.0);
}

TEST_CASE("letter demo below the match floor flags an empty denominator") {
  auto report = letter_fragment_demo("ab", "ab");  // both below min_match 3
  CHECK(report.zero_denominator_a);
  CHECK(report.zero_denominator_b);
  CHECK(report.si_a_given_b == 0.0);
  CHECK(report.counts_a.symbols_total == 0);
  REQUIRE_FALSE(report.excluded_ledger.empty());
  CHECK(report.excluded_ledger[0].span.reason ==
        ExclusionReason::ShortSequence);
}

TEST_CASE("definitional-formula dictionary entry shrinks the match set") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());
  Dictionary dict = load_dictionary("$u(x, t) = f(x) g(t)$\n");
  Document v1x = apply_phrase_exclusions(v1, dict);
  Document v2x = apply_phrase_exclusions(v2, dict);

  auto m1 = score_method1(v1x, v2x, policy_for(Mode::Method1));
  CHECK(m1.counts_a.formulas_total == 10);
  CHECK(m1.counts_a.formulas_matched == 3);
  CHECK(m1.counts_b.formulas_total == 6);
  CHECK(m1.counts_b.formulas_matched == 3);
  CHECK(m1.si_a_given_b == 100.0 * 3 / 10);
  CHECK(m1.si_b_given_a == 100.0 * 3 / 6);

  bool dictionary_entry = false;
  for (const auto& entry : m1.excluded_ledger)
    if (entry.span.reason == ExclusionReason::TermDictionary)
      dictionary_entry = true;
  CHECK(dictionary_entry);
}

TEST_CASE("minimum formula size filters single-symbol formulas") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());
  Policy p = policy_for(Mode::Method1);
  p.min_formula_symbols = 2;
  auto m1 = score_method1(v1, v2, p);
  CHECK(m1.counts_a.formulas_total == 10);
  CHECK(m1.counts_a.formulas_matched == 3);
  CHECK(m1.counts_b.formulas_total == 6);
  CHECK(m1.counts_b.formulas_matched == 3);
}

TEST_CASE("language independence: translated words leave method 1 unchanged") {
  Document original = parse_document(fixtures::separable_solutions_a());
  Document spanish = parse_document(fixtures::separable_solutions_a_spanish());
  Document v2 = parse_document(fixtures::separable_solutions_b());

  auto base = score_method1(original, v2, policy_for(Mode::Method1));
  auto translated = score_method1(spanish, v2, policy_for(Mode::Method1));
  CHECK(base == translated);

  // Sanity: the words really are different.
  auto frag_base = score_fragment(original, spanish, policy_for(Mode::Fragment));
  CHECK(frag_base.counts_a.words_matched == 0);
}

TEST_CASE("alpha invariance under randomized identifier renamings") {
  const std::vector<std::string_view> docs = {
      fixtures::separable_solutions_a(), fixtures::separable_solutions_b(),
      fixtures::wave_equation_doc(), fixtures::formula_gallery_a()};
  Policy alpha_policy = policy_for(Mode::Method1);
  alpha_policy.alpha = true;

  std::mt19937 rng(424242);
  for (int trial = 0; trial < 100; ++trial) {
    std::string_view text = docs[trial % docs.size()];
    auto letters = support::formula_letters(text);
    auto renaming = support::random_renaming(letters, rng);
    std::string renamed = support::rename_formula_letters(text, renaming);

    Document original = parse_document(text);
    Document rewritten = parse_document(renamed);
    auto report = score_method1(rewritten, original, alpha_policy);
    REQUIRE(report.si_a_given_b == 100.0);
    REQUIRE(report.si_b_given_a == 100.0);
  }

  // Without alpha, a renaming is (generically) no longer a match.
  Document wave = parse_document(fixtures::wave_equation_doc());
  std::string renamed = support::rename_formula_letters(
      fixtures::wave_equation_doc(), {{'u', 'w'}});
  auto strict = score_method1(parse_document(renamed), wave,
                              policy_for(Mode::Method1));
  CHECK(strict.si_a_given_b == 0.0);
}

TEST_CASE("self-comparison scores 100 in every mode") {
  for (const auto& pair : fixtures::builtin_pairs()) {
    Document doc = parse_document(pair.text_a);
    auto frag = score_fragment(doc, doc, policy_for(Mode::Fragment));
    if (!frag.zero_denominator_a) CHECK(frag.si_a_given_b == 100.0);
    auto m2 = score_method2(doc, doc, policy_for(Mode::Method2));
    if (!m2.zero_denominator_a) CHECK(m2.si_a_given_b == 100.0);
    if (!doc.formulas.empty()) {
      auto m1 = score_method1(doc, doc, policy_for(Mode::Method1));
      CHECK(m1.si_a_given_b == 100.0);
      CHECK(m1.si_b_given_a == 100.0);
    }
  }
}

TEST_CASE("indices are bounded and reconcile with their counts") {
  for (const auto& pair : fixtures::builtin_pairs()) {
    Document a = parse_document(pair.text_a);
    Document b = parse_document(pair.text_b);
    for (Mode mode : {Mode::Fragment, Mode::Method1, Mode::Method2}) {
      auto report = score(a, b, policy_for(mode));
      CHECK(report.si_a_given_b >= 0.0);
      CHECK(report.si_a_given_b <= 100.0);
      CHECK(report.si_b_given_a >= 0.0);
      CHECK(report.si_b_given_a <= 100.0);
      CHECK(report.si_a_given_b ==
            recompute_index(mode, report.counts_a,
                            report.policy.formula_weight));
      CHECK(report.si_b_given_a ==
            recompute_index(mode, report.counts_b,
                            report.policy.formula_weight));
    }
  }
}

TEST_CASE("empty documents flag zero denominators instead of failing") {
  Document empty = parse_document("");
  Document full = parse_document("Some words and $y = x$ here.");
  for (Mode mode : {Mode::Fragment, Mode::Method1, Mode::Method2}) {
    auto report = score(empty, empty, policy_for(mode));
    CHECK(report.zero_denominator_a);
    CHECK(report.zero_denominator_b);
    CHECK(report.si_a_given_b == 0.0);
    CHECK(report.si_b_given_a == 0.0);

    auto mixed = score(empty, full, policy_for(mode));
    CHECK(mixed.zero_denominator_a);
    CHECK(mixed.si_a_given_b == 0.0);
  }
}

TEST_CASE("enabling exclusions never raises matched numerators") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());
  const std::vector<std::string> pool = {
      "separable solution\n",
      "pantograph-type\n",
      "arbitrary constant\n",
      "$u(x, t) = f(x) g(t)$\n",
      "$g'_t - bg \\ln \\bar g + (k - c)g = 0$\n",
      "equation\n",
      "nonlinear\n",
      "multiplicative\n"};
  std::mt19937 rng(31337);

  for (int trial = 0; trial < 200; ++trial) {
    std::string smaller;
    for (const auto& entry : pool)
      if (rng() % 2) smaller += entry;
    const std::string& extra = pool[rng() % pool.size()];

    Dictionary small_dict = load_dictionary(smaller);
    Dictionary big_dict = load_dictionary(smaller + extra);
    Document small_a = apply_phrase_exclusions(v1, small_dict);
    Document small_b = apply_phrase_exclusions(v2, small_dict);
    Document big_a = apply_phrase_exclusions(v1, big_dict);
    Document big_b = apply_phrase_exclusions(v2, big_dict);

    for (Mode mode : {Mode::Fragment, Mode::Method1, Mode::Method2}) {
      auto small_report = score(small_a, small_b, policy_for(mode));
      auto big_report = score(big_a, big_b, policy_for(mode));
      REQUIRE(big_report.counts_a.words_matched <=
              small_report.counts_a.words_matched);
      REQUIRE(big_report.counts_a.formulas_matched <=
              small_report.counts_a.formulas_matched);
      REQUIRE(big_report.counts_b.words_matched <=
              small_report.counts_b.words_matched);
      REQUIRE(big_report.counts_b.formulas_matched <=
              small_report.counts_b.formulas_matched);
    }
  }
}

TEST_CASE("turning short-run exclusion off restores raw totals") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());
  Policy keep_short = policy_for(Mode::Fragment);
  keep_short.exclude.short_sequences = false;
  auto report = score_fragment(v1, v2, keep_short);

  CHECK(report.counts_a.words_total == 55);
  CHECK(report.counts_b.words_total == 50);
  CHECK(report.counts_a.symbols_total == 95);
  CHECK(report.counts_b.symbols_total == 67);
  // Numerators cannot grow: sub-threshold runs were unmatchable anyway.
  CHECK(report.counts_a.words_matched == 30);
  CHECK(report.counts_a.symbols_matched == 62);
  for (const auto& entry : report.excluded_ledger)
    CHECK(entry.span.reason != ExclusionReason::ShortSequence);
}

TEST_CASE("formula weight and match floors are validated") {
  Policy p;
  p.formula_weight = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = Policy{};
  p.word_min_match = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = Policy{};
  p.symbol_min_match = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = Policy{};
  p.formula_weight = 1;  // the lightest valid weighting stays usable
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(letter_fragment_demo("a", "b", 0), std::invalid_argument);
}

TEST_CASE("report tiles stay inside their documents") {
  Document v1 = parse_document(fixtures::separable_solutions_a());
  Document v2 = parse_document(fixtures::separable_solutions_b());
  auto report = score_fragment(v1, v2, policy_for(Mode::Fragment));
  REQUIRE_FALSE(report.tiles.empty());
  for (const auto& tile : report.tiles) {
    CHECK(tile.a_bytes.begin < tile.a_bytes.end);
    CHECK(tile.a_bytes.end <= v1.raw_text.size());
    CHECK(tile.b_bytes.begin < tile.b_bytes.end);
    CHECK(tile.b_bytes.end <= v2.raw_text.size());
    CHECK(tile.a_len > 0);
  }
}
