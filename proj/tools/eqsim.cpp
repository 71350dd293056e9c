#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqsim/fixtures.hpp"
#include "eqsim/report.hpp"
#include "eqsim/scoring.hpp"
#include "eqsim/segmenter.hpp"

namespace {

namespace fs = std::filesystem;
using namespace eqsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitRegression = 3;

struct Options {
  std::string mode = "method2";
  int min_words = 8;
  int min_symbols = 2;
  int min_letters = 3;
  int formula_weight = 8;
  bool alpha = false;
  int min_formula_symbols = 1;
  std::string terms_file;
  bool no_metadata = false;
  bool no_bibliography = false;
  bool no_short = false;
  std::string format = "text";
  std::string out_path;
};

void add_policy_flags(CLI::App& cmd, Options& opt) {
  cmd.add_option("--mode", opt.mode, "Index mode")
      ->check(CLI::IsMember({"fragment", "method1", "method2", "letter_demo"}))
      ->capture_default_str();
  cmd.add_option("--min-words", opt.min_words,
                 "Shortest matchable word run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--min-symbols", opt.min_symbols,
                 "Shortest matchable formula-symbol run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--min-letters", opt.min_letters,
                 "Shortest matchable letter run (letter_demo)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--formula-weight", opt.formula_weight,
                 "Words one formula is worth (method2)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_flag("--alpha", opt.alpha,
               "Compare formulas after identifier renaming");
  cmd.add_option("--min-formula-symbols", opt.min_formula_symbols,
                 "Ignore formulas with fewer symbols")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--terms", opt.terms_file,
                 "Term dictionary file (default: $EQSIM_TERMS)");
  cmd.add_flag("--no-metadata-exclude", opt.no_metadata,
               "Keep front matter in the comparison");
  cmd.add_flag("--no-bibliography-exclude", opt.no_bibliography,
               "Keep the bibliography tail in the comparison");
  cmd.add_flag("--no-short-exclude", opt.no_short,
               "Keep word runs shorter than --min-words in the totals");
  cmd.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "html"}))
      ->capture_default_str();
  cmd.add_option("--out", opt.out_path, "Write output to this path");
}

Policy make_policy(const Options& opt) {
  Policy policy;
  policy.mode = *mode_from_name(opt.mode);
  policy.word_min_match = opt.min_words;
  policy.symbol_min_match = opt.min_symbols;
  policy.letter_min_match = opt.min_letters;
  policy.formula_weight = opt.formula_weight;
  policy.alpha = opt.alpha;
  policy.min_formula_symbols = opt.min_formula_symbols;
  policy.exclude.metadata = !opt.no_metadata;
  policy.exclude.bibliography = !opt.no_bibliography;
  policy.exclude.short_sequences = !opt.no_short;
  return policy;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

bool write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return true;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << content;
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return false;
  }
  return true;
}

// Returns the loaded dictionary, an empty one when no file is configured,
// or nullopt when a configured file cannot be read.
std::optional<Dictionary> load_terms(const Options& opt) {
  std::string path = opt.terms_file;
  if (path.empty()) {
    if (const char* env = std::getenv("EQSIM_TERMS")) path = env;
  }
  if (path.empty()) return Dictionary{};
  try {
    return load_dictionary_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

std::optional<Document> parse_file(const std::string& path,
                                   const std::string& text,
                                   const Dictionary& dict) {
  try {
    ParseOptions options;
    options.source_id = path;
    Document doc = parse_document(text, options);
    if (!dict.empty()) doc = apply_phrase_exclusions(doc, dict);
    return doc;
  } catch (const ParseError& e) {
    std::cerr << "error: " << path << ": byte " << e.offset() << ": "
              << e.what() << "\n";
    return std::nullopt;
  }
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const Options& opt) {
  auto text_a = read_file(path_a);
  if (!text_a) {
    std::cerr << "error: cannot read " << path_a << "\n";
    return kExitUsage;
  }
  auto text_b = read_file(path_b);
  if (!text_b) {
    std::cerr << "error: cannot read " << path_b << "\n";
    return kExitUsage;
  }
  auto dict = load_terms(opt);
  if (!dict) return kExitUsage;
  auto doc_a = parse_file(path_a, *text_a, *dict);
  if (!doc_a) return kExitParse;
  auto doc_b = parse_file(path_b, *text_b, *dict);
  if (!doc_b) return kExitParse;

  SimilarityReport report = score(*doc_a, *doc_b, make_policy(opt));
  std::string rendered =
      render(report, *doc_a, *doc_b, *format_from_name(opt.format));
  return write_output(rendered, opt.out_path) ? kExitOk : kExitUsage;
}

int cmd_batch(const std::string& path_a, const std::string& dir,
              const Options& opt) {
  auto text_a = read_file(path_a);
  if (!text_a) {
    std::cerr << "error: cannot read " << path_a << "\n";
    return kExitUsage;
  }
  auto dict = load_terms(opt);
  if (!dict) return kExitUsage;
  auto doc_a = parse_file(path_a, *text_a, *dict);
  if (!doc_a) return kExitParse;

  std::error_code ec;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path().string());
  }
  if (ec) {
    std::cerr << "error: cannot list " << dir << ": " << ec.message() << "\n";
    return kExitUsage;
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no files in " << dir << "\n";
    return kExitUsage;
  }

  if (!opt.out_path.empty()) {
    fs::create_directories(opt.out_path, ec);
    if (ec) {
      std::cerr << "error: cannot create " << opt.out_path << ": "
                << ec.message() << "\n";
      return kExitUsage;
    }
  }

  Policy policy = make_policy(opt);
  struct BatchRow {
    std::string file;
    SimilarityReport report;
    std::size_t input_order;
  };
  std::vector<BatchRow> scored;
  std::vector<std::string> skipped;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string& file = files[i];
    auto text = read_file(file);
    if (!text) {
      skipped.push_back(file + " (unreadable)");
      continue;
    }
    Document doc_b;
    try {
      ParseOptions options;
      options.source_id = file;
      doc_b = parse_document(*text, options);
      if (!dict->empty()) doc_b = apply_phrase_exclusions(doc_b, *dict);
    } catch (const ParseError& e) {
      skipped.push_back(file + " (parse error at byte " +
                        std::to_string(e.offset()) + ")");
      continue;
    }
    BatchRow row{file, score(*doc_a, doc_b, policy), i};
    if (!opt.out_path.empty()) {
      fs::path out_file =
          fs::path(opt.out_path) / (fs::path(file).stem().string() + ".json");
      std::ofstream out(out_file, std::ios::binary);
      out << report_to_json(row.report).dump(2) << "\n";
      if (!out) {
        std::cerr << "error: cannot write " << out_file.string() << "\n";
        return kExitUsage;
      }
    }
    scored.push_back(std::move(row));
  }

  std::stable_sort(scored.begin(), scored.end(),
                   [](const BatchRow& x, const BatchRow& y) {
                     if (x.report.si_a_given_b != y.report.si_a_given_b)
                       return x.report.si_a_given_b > y.report.si_a_given_b;
                     return x.input_order < y.input_order;
                   });

  std::size_t file_w = 4;
  for (const auto& row : scored) file_w = std::max(file_w, row.file.size());
  std::ostringstream table;
  table << path_a << " against " << dir << " (" << mode_name(policy.mode)
        << ")\n";
  table << std::left << std::setw(static_cast<int>(file_w)) << "file"
        << std::right << std::setw(9) << "si(a|b)" << std::setw(9) << "si(b|a)"
        << "\n";
  for (const auto& row : scored) {
    table << std::left << std::setw(static_cast<int>(file_w)) << row.file
          << std::right << std::setw(9)
          << format_percent(row.report.si_a_given_b) << std::setw(9)
          << format_percent(row.report.si_b_given_a) << "\n";
  }
  for (const auto& skip : skipped) table << "skipped: " << skip << "\n";
  std::cout << table.str();
  return kExitOk;
}

int cmd_fixtures(const Options& opt) {
  Policy policy = make_policy(opt);
  std::vector<FixtureRow> rows = fixtures::run_builtin(policy);

  std::string rendered;
  if (opt.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json cells;
      auto cell_json = [](const FixtureCell& cell) -> nlohmann::json {
        if (!cell.present) return nullptr;
        return {{"a_given_b", cell.a_given_b}, {"b_given_a", cell.b_given_a}};
      };
      cells["name"] = row.name;
      cells["fragment"] = cell_json(row.fragment);
      cells["method1"] = cell_json(row.method1);
      cells["method2"] = cell_json(row.method2);
      cells["letters"] = cell_json(row.letters);
      out.push_back(cells);
    }
    rendered = out.dump(2) + "\n";
  } else if (opt.format == "html") {
    rendered = "<!doctype html>\n<html lang=\"en\">\n<head>\n"
               "<meta charset=\"utf-8\">\n<title>builtin fixtures</title>\n"
               "</head>\n<body style=\"font-family:monospace\">\n<pre>" +
               fixture_table(rows) + "</pre>\n</body>\n</html>\n";
  } else {
    rendered = fixture_table(rows);
  }
  if (!write_output(rendered, opt.out_path)) return kExitUsage;

  std::vector<std::string> failures = fixtures::regressions(rows);
  for (const auto& failure : failures)
    std::cerr << "regression: " << failure << "\n";
  return failures.empty() ? kExitOk : kExitRegression;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity indices for documents with equations and formulas"};
  app.require_subcommand(1);

  Options opt;
  std::string path_a, path_b, dir;

  CLI::App* compare =
      app.add_subcommand("compare", "Compare two documents");
  compare->add_option("file_a", path_a, "First document")->required();
  compare->add_option("file_b", path_b, "Second document")->required();
  add_policy_flags(*compare, opt);

  CLI::App* batch =
      app.add_subcommand("batch", "Compare one document against a directory");
  batch->add_option("file_a", path_a, "Reference document")->required();
  batch->add_option("dir", dir, "Directory of candidate documents")->required();
  add_policy_flags(*batch, opt);

  CLI::App* fixtures_cmd =
      app.add_subcommand("fixtures", "Score the builtin example corpus");
  add_policy_flags(*fixtures_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compare->parsed()) return cmd_compare(path_a, path_b, opt);
    if (batch->parsed()) return cmd_batch(path_a, dir, opt);
    if (fixtures_cmd->parsed()) return cmd_fixtures(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
