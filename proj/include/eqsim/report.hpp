#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eqsim/scoring.hpp"
#include "eqsim/segmenter.hpp"

namespace eqsim {

enum class RenderFormat { Text, Html, Json };

// One decimal place, e.g. "87.5".
std::string format_percent(double value);

std::string_view mode_name(Mode mode);
std::optional<Mode> mode_from_name(std::string_view name);
std::string_view granularity_name(Granularity granularity);
std::optional<Granularity> granularity_from_name(std::string_view name);
std::string_view reason_name(ExclusionReason reason);
std::optional<ExclusionReason> reason_from_name(std::string_view name);
std::string_view format_name(RenderFormat format);
std::optional<RenderFormat> format_from_name(std::string_view name);

// Lossless serialization: report_from_json(report_to_json(r)) equals r
// field for field. Throws std::runtime_error (or nlohmann::json::exception)
// on malformed input.
nlohmann::json report_to_json(const SimilarityReport& report);
SimilarityReport report_from_json(const nlohmann::json& j);

// Renders a report against the documents it was computed from. Text paints
// matches red and exclusions gray with ANSI codes; Html is a single
// self-contained page whose match spans carry data-range="begin-end" byte
// attributes; Json is report_to_json pretty-printed. Output is a pure
// function of the inputs.
std::string render(const SimilarityReport& report, const Document& a,
                   const Document& b, RenderFormat format);

// One directional index pair of a fixture under one mode; absent cells
// render as "-".
struct FixtureCell {
  bool present = false;
  double a_given_b = 0.0;
  double b_given_a = 0.0;
};

struct FixtureRow {
  std::string name;
  FixtureCell fragment;
  FixtureCell method1;
  FixtureCell method2;
  FixtureCell letters;
};

// Aligned plain-text table: one row per fixture, two directional columns
// per mode.
std::string fixture_table(const std::vector<FixtureRow>& rows);

}  // namespace eqsim
