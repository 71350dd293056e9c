#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqsim/report.hpp"
#include "eqsim/scoring.hpp"

namespace eqsim::fixtures {

struct FixturePair {
  std::string name;
  std::string_view text_a;
  std::string_view text_b;
  bool letters = false;  // plain phrases, also run the letter-granularity demo
};

// The embedded example corpus, in display order.
const std::vector<FixturePair>& builtin_pairs();

// Direct accessors for targeted tests.
std::string_view wave_equation_doc();
std::string_view heat_equation_doc();
std::string_view separable_solutions_a();
std::string_view separable_solutions_b();
// The same document as separable_solutions_a with every word translated to
// Spanish; all formulas byte-identical.
std::string_view separable_solutions_a_spanish();
std::string_view formula_gallery_a();
std::string_view formula_gallery_b();
std::string_view letter_phrase_a();
std::string_view letter_phrase_b();

// Scores every builtin pair under fragment, method1 and method2 (letter
// pairs additionally under the letter demo) using the policy's thresholds.
std::vector<FixtureRow> run_builtin(const Policy& policy = {});

// Bounds that must always hold on the builtin corpus. Returns one message
// per violation; empty means all bounds hold.
std::vector<std::string> regressions(const std::vector<FixtureRow>& rows);

}  // namespace eqsim::fixtures
