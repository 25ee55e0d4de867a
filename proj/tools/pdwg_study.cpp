// Convergence study driver: runs one manufactured case over a refinement
// ladder and prints the error table.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pdwg/study.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual weak Galerkin convergence study for elliptic Cauchy problems"};

  std::string case_id;
  std::string levels_text = "1,2,4,8,16,32";
  int degree = 1;
  std::string format = "csv";
  std::string out_path;
  std::string dump_matrix;
  bool list_cases = false;
  bool no_timing = false;
  bool condition = false;

  app.add_option("--case", case_id, "Case identifier (see --list-cases)");
  app.add_option("--levels", levels_text, "Comma-separated subdivisions per side")->capture_default_str();
  app.add_option("--degree", degree, "Polynomial degree k")->check(CLI::Range(1, 3))->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "markdown"}))->capture_default_str();
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--dump-matrix", dump_matrix, "Write the finest-level matrix in coordinate format");
  app.add_flag("--list-cases", list_cases, "List the available cases and exit");
  app.add_flag("--no-timing", no_timing, "Leave the wall_ms column empty");
  app.add_flag("--condition", condition, "Print a 1-norm condition estimate per level to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list_cases) {
    for (const pdwg::CaseSpec& c : pdwg::catalog()) std::cout << c.id << '\t' << c.description << '\n';
    return 0;
  }
  if (case_id.empty()) {
    std::cerr << "error: --case is required\n" << app.help();
    return 1;
  }

  std::vector<int> levels;
  const pdwg::CaseSpec* spec = nullptr;
  try {
    levels = pdwg::parse_levels(levels_text);
    spec = &pdwg::find_case(case_id);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  pdwg::StudyOptions options;
  options.dump_matrix_path = dump_matrix;
  options.estimate_condition = condition;
  pdwg::ConvergenceReport report;
  try {
    report = pdwg::run_study(*spec, levels, degree, options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  for (const pdwg::LevelResult& level : report.levels) {
    if (!level.message.empty()) {
      std::cerr << "n=" << level.n << ": " << pdwg::status_name(level.status) << ": " << level.message << '\n';
    }
    if (level.condition) std::cerr << "n=" << level.n << ": condition estimate " << *level.condition << '\n';
  }

  const std::string text = pdwg::emit(
      report, format == "csv" ? pdwg::ReportFormat::Csv : pdwg::ReportFormat::Markdown, !no_timing);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open " << out_path << '\n';
      return 1;
    }
    out << text;
  }
  return report.any_failed() ? 2 : 0;
}
