#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process;
// tools/credeval.cpp is a thin main().
//
//   eval      --input FILE | --run FILE --qrels FILE  --measures LIST ...
//   correlate --report FILE --x MEASURE --y MEASURE
//   oracle    [--n N] --mu R --nu R
//   convert   --csv FILE --query-col C --assessor-col C --rank-col C
//             --doc-col C --rel-col C --cred-col C

#include <cmath>
#include <cstddef>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "credeval/core.hpp"
#include "credeval/correlation.hpp"
#include "credeval/evaluate.hpp"
#include "credeval/io.hpp"
#include "credeval/oracle.hpp"
#include "credeval/type_one.hpp"

namespace credeval::cli {

/// Measures reported in the published comparison table.
inline constexpr std::string_view kDefaultMeasures =
    "nlre,ngre,nwcs,ndcg,ap,f1,g,cam:ndcg+f1,cam:ndcg+g,cam:ap+f1,cam:ap+g,"
    "wham:ndcg+f1,wham:ndcg+g,wham:ap+f1,wham:ap+g";

inline constexpr double kOracleTolerance = 1e-9;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct EvalOptions {
  std::string input;
  std::string run;
  std::string qrels;
  std::string measures{kDefaultMeasures};
  MeasureConfig config;
  ReportFormat output = ReportFormat::tsv;
  Granularity granularity = Granularity::query_mean;
};

inline int run_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  opt.config.validate();
  const auto specs = parse_measure_list(opt.measures);

  std::vector<EvalUnit> units;
  std::vector<std::string> warnings;
  if (!opt.input.empty()) {
    if (!opt.run.empty() || !opt.qrels.empty()) {
      throw ConfigError("--input cannot be combined with --run/--qrels");
    }
    try {
      units = parse_assessed_rankings(read_file(opt.input));
    } catch (const ParseError& e) {
      throw std::runtime_error(opt.input + ": " + e.what());
    }
  } else if (!opt.run.empty() && !opt.qrels.empty()) {
    ParsedUnits parsed;
    try {
      parsed = parse_run_and_qrels(read_file(opt.run), read_file(opt.qrels),
                                   opt.config.unjudged_grade);
    } catch (const ParseError& e) {
      throw std::runtime_error(opt.run + " / " + opt.qrels + ": " + e.what());
    }
    units = std::move(parsed.units);
    warnings = std::move(parsed.warnings);
  } else {
    throw ConfigError("either --input or both --run and --qrels are required");
  }

  auto report = evaluate(units, specs, opt.config, opt.granularity);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  out << write_report(report, opt.output);
  return 0;
}

struct CorrelateOptions {
  std::string report;
  std::string x;
  std::string y;
  Granularity granularity = Granularity::query_mean;
};

inline int run_correlate(const CorrelateOptions& opt, std::ostream& out, std::ostream& err) {
  EvalReport report;
  try {
    report = parse_report(read_file(opt.report));
  } catch (const ParseError& e) {
    throw std::runtime_error(opt.report + ": " + e.what());
  }
  const auto [xs, ys] = paired_values(report, opt.x, opt.y, opt.granularity);
  if (xs.empty()) {
    throw ConfigError("report has no unit rows pairing '" + opt.x + "' with '" + opt.y + "'");
  }
  const auto rho = spearman(xs, ys);
  out << "x\ty\tgranularity\tn\tspearman\n";
  out << opt.x << '\t' << opt.y << '\t'
      << (opt.granularity == Granularity::unit ? "unit" : "query-mean") << '\t' << xs.size()
      << '\t' << (rho ? format_value(*rho) : "undefined") << '\n';
  if (!rho) err << "warning: correlation undefined (fewer than two points or no variance)\n";
  return 0;
}

struct OracleOptions {
  std::vector<std::size_t> sizes;
  double mu = 0.5;
  double nu = 0.5;
};

inline std::string join_positions(const std::vector<std::size_t>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(p[i]);
  }
  return s;
}

/// PASS when the exhaustive maximum does not exceed the constant and
/// attains it (both within kOracleTolerance).
inline bool bound_holds(double max_error, double constant) {
  return std::abs(max_error - constant) <= kOracleTolerance;
}

inline int run_oracle(const OracleOptions& opt, std::ostream& out, std::ostream&) {
  detail::check_weights(opt.mu, opt.nu);
  bool all_pass = true;
  out << "n\tmu\tnu\tbound\tmax_error\tconstant\twitness_relevance\twitness_credibility\tstatus\n";
  out << std::fixed;
  for (std::size_t n : opt.sizes) {
    const auto r = oracle_max_error(n, opt.mu, opt.nu);
    const double constants[] = {c_lre(n, opt.mu, opt.nu), c_gre(n, opt.mu, opt.nu)};
    const double maxima[] = {r.max_lre, r.max_gre};
    const OracleWitness* witnesses[] = {&r.lre_witness, &r.gre_witness};
    const char* names[] = {"lre", "gre"};
    for (int b = 0; b < 2; ++b) {
      const bool pass = bound_holds(maxima[b], constants[b]);
      all_pass = all_pass && pass;
      out << n << '\t' << std::setprecision(4) << opt.mu << '\t' << opt.nu << '\t' << names[b]
          << '\t' << std::setprecision(9) << maxima[b] << '\t' << constants[b] << '\t'
          << join_positions(witnesses[b]->relevance_positions) << '\t'
          << join_positions(witnesses[b]->credibility_positions) << '\t'
          << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return all_pass ? 0 : 1;
}

struct ConvertOptions {
  std::string csv;
  char delimiter = ',';
  bool skip_header = false;
  std::size_t query_col = 0;
  std::size_t assessor_col = 0;
  std::size_t rank_col = 0;
  std::size_t doc_col = 0;
  std::size_t rel_col = 0;
  std::size_t cred_col = 0;
};

/// Splits one CSV record; double quotes group fields and "" escapes a quote.
inline std::vector<std::string> split_csv(std::string_view line, char delimiter) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delimiter) {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Converts a delimited file to the assessed-ranking format. Columns are
/// 1-based. Output is validated by parsing it back.
inline int run_convert(const ConvertOptions& opt, std::ostream& out, std::ostream&) {
  const std::size_t cols[] = {opt.query_col, opt.assessor_col, opt.rank_col,
                              opt.doc_col,   opt.rel_col,      opt.cred_col};
  std::size_t needed = 0;
  for (auto c : cols) {
    if (c < 1) throw ConfigError("column indices are 1-based");
    needed = std::max(needed, c);
  }
  const std::string text = read_file(opt.csv);
  std::istringstream in(text);
  std::string line;
  std::string converted;
  std::size_t number = 0;
  bool header_pending = opt.skip_header;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split_csv(line, opt.delimiter);
    if (fields.size() < needed) {
      throw ParseError(number, "expected at least " + std::to_string(needed) + " columns, found " +
                                   std::to_string(fields.size()));
    }
    std::string record;
    for (std::size_t i = 0; i < 6; ++i) {
      auto value = trim(fields[cols[i] - 1]);
      if (value.empty() || value.find_first_of(" \t") != std::string::npos || value[0] == '#') {
        throw ParseError(number, "column " + std::to_string(cols[i]) + " value '" + value +
                                     "' is empty or contains whitespace");
      }
      if (i > 0) record += ' ';
      record += value;
    }
    converted += record + '\n';
  }
  parse_assessed_rankings(converted);
  out << converted;
  return 0;
}

inline Granularity parse_granularity(const std::string& s) {
  return s == "unit" ? Granularity::unit : Granularity::query_mean;
}

/// Runs the CLI on `args` (args[0] is the program name). Returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint relevance and credibility evaluation of ranked lists"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  std::string gain = "linear";
  std::string output = "tsv";
  std::string granularity = "query-mean";
  auto* eval = app.add_subcommand("eval", "Evaluate ranked lists and print a report");
  eval->add_option("--input", eval_opt.input, "Assessed-ranking file")->check(CLI::ExistingFile);
  eval->add_option("--run", eval_opt.run, "Run file (query Q0 doc rank score tag)")
      ->check(CLI::ExistingFile);
  eval->add_option("--qrels", eval_opt.qrels,
                   "Judgment file (query assessor doc relevance credibility)")
      ->check(CLI::ExistingFile);
  eval->add_option("--measures", eval_opt.measures, "Comma-separated measure list")
      ->capture_default_str();
  eval->add_option("--mu", eval_opt.config.mu, "Relevance-error weight")->capture_default_str();
  eval->add_option("--nu", eval_opt.config.nu, "Credibility-error weight")->capture_default_str();
  eval->add_option("--lambda", eval_opt.config.lambda, "Relevance share in NWCS/CAM/WHAM")
      ->capture_default_str();
  eval->add_option("--k", eval_opt.config.cutoff_k, "Cutoff for p@k, recall, ndcg, f1, g")
      ->capture_default_str();
  eval->add_option("--binary-threshold", eval_opt.config.binary_threshold,
                   "Grades at or above this are positive")
      ->capture_default_str();
  eval->add_option("--unjudged-grade", eval_opt.config.unjudged_grade,
                   "Grade given to unjudged documents (0-4)")
      ->capture_default_str();
  eval->add_option("--gain", gain, "NDCG gain")
      ->check(CLI::IsMember({"linear", "exponential"}))
      ->capture_default_str();
  eval->add_option("--output", output, "Report format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  eval->add_option("--granularity", granularity, "Also emit per-query mean rows (query-mean)")
      ->check(CLI::IsMember({"unit", "query-mean"}))
      ->capture_default_str();

  CorrelateOptions corr_opt;
  std::string corr_granularity = "query-mean";
  auto* corr = app.add_subcommand("correlate", "Spearman correlation of two measures in a report");
  corr->add_option("--report", corr_opt.report, "Report file (TSV or JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  corr->add_option("--x", corr_opt.x, "First measure")->required();
  corr->add_option("--y", corr_opt.y, "Second measure")->required();
  corr->add_option("--granularity", corr_granularity, "Pair unit values or per-query means")
      ->check(CLI::IsMember({"unit", "query-mean"}))
      ->capture_default_str();

  OracleOptions oracle_opt;
  std::size_t oracle_n = 0;
  auto* oracle = app.add_subcommand("oracle", "Check normalization constants by exhaustive search");
  oracle->add_option("--n", oracle_n, "List length (2-7); omit to sweep 2-6")
      ->check(CLI::Range(std::size_t{2}, kOracleMaxN));
  oracle->add_option("--mu", oracle_opt.mu, "Relevance-error weight")->capture_default_str();
  oracle->add_option("--nu", oracle_opt.nu, "Credibility-error weight")->capture_default_str();

  ConvertOptions conv_opt;
  std::string delimiter = ",";
  auto* convert = app.add_subcommand("convert", "Convert a delimited file to the assessed-ranking format");
  convert->add_option("--csv", conv_opt.csv, "Input file")->required()->check(CLI::ExistingFile);
  convert->add_option("--delimiter", delimiter, "Field delimiter (single character)")
      ->capture_default_str();
  convert->add_flag("--skip-header", conv_opt.skip_header, "Ignore the first non-blank line");
  convert->add_option("--query-col", conv_opt.query_col, "1-based column of the query id")->required();
  convert->add_option("--assessor-col", conv_opt.assessor_col, "1-based column of the assessor id")
      ->required();
  convert->add_option("--rank-col", conv_opt.rank_col, "1-based column of the rank")->required();
  convert->add_option("--doc-col", conv_opt.doc_col, "1-based column of the doc id")->required();
  convert->add_option("--rel-col", conv_opt.rel_col, "1-based column of the relevance grade")
      ->required();
  convert->add_option("--cred-col", conv_opt.cred_col, "1-based column of the credibility grade")
      ->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (eval->parsed()) {
      eval_opt.config.gain = gain == "exponential" ? Gain::exponential : Gain::linear;
      eval_opt.output = output == "json" ? ReportFormat::json : ReportFormat::tsv;
      eval_opt.granularity = parse_granularity(granularity);
      return run_eval(eval_opt, out, err);
    }
    if (corr->parsed()) {
      corr_opt.granularity = parse_granularity(corr_granularity);
      return run_correlate(corr_opt, out, err);
    }
    if (oracle->parsed()) {
      if (oracle_n == 0) {
        oracle_opt.sizes = {2, 3, 4, 5, 6};
      } else {
        oracle_opt.sizes = {oracle_n};
      }
      return run_oracle(oracle_opt, out, err);
    }
    if (convert->parsed()) {
      if (delimiter == "\\t" || delimiter == "tab") delimiter = "\t";
      if (delimiter.size() != 1) throw ConfigError("--delimiter must be a single character");
      conv_opt.delimiter = delimiter[0];
      return run_convert(conv_opt, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace credeval::cli
