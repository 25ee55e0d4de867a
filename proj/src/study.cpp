#include "pdwg/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pdwg {

bool ConvergenceReport::any_failed() const {
  for (const LevelResult& level : levels) {
    if (!level.ok()) return true;
  }
  return false;
}

std::optional<double> observed_order(double coarse_error, double fine_error, int coarse_n, int fine_n) {
  if (!(coarse_error >= kOrderFloor) || !(fine_error >= kOrderFloor)) return std::nullopt;
  if (fine_n <= coarse_n) return std::nullopt;
  return std::log(coarse_error / fine_error) / std::log(static_cast<double>(fine_n) / coarse_n);
}

LevelResult run_level(const CaseSpec& c, int n, int k, const StudyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  LevelResult level;
  level.n = n;
  const Mesh mesh = build_uniform_mesh(n);
  level.h = mesh.h();
  const BoundaryConfig config = classify_boundary(mesh, c.dirichlet_sides, c.neumann_sides);
  const LocalOperators ops(mesh, k, c.diffusion);
  const SaddleSystem sys = assemble(ops, config, ProblemData::from_case(c));
  level.system_size = sys.size();
  if (!options.dump_matrix_path.empty()) {
    std::ofstream out(options.dump_matrix_path);
    if (!out) throw std::runtime_error("cannot open " + options.dump_matrix_path);
    write_matrix_coordinates(out, sys.matrix);
  }
  const SolveResult solution = solve(sys);
  level.status = solution.status;
  level.message = solution.message;
  if (solution.ok()) level.errors = evaluate_errors(solution.u, solution.lambda, c.u, ops, config);
  if (options.estimate_condition) level.condition = condition_estimate(sys);
  level.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return level;
}

ConvergenceReport run_study(const CaseSpec& c, const std::vector<int>& levels, int k,
                            const StudyOptions& options) {
  if (levels.empty()) throw std::invalid_argument("refinement ladder is empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1 || (i > 0 && levels[i] <= levels[i - 1])) {
      throw std::invalid_argument("refinement levels must be positive and strictly ascending");
    }
  }
  ConvergenceReport report;
  report.case_id = c.id;
  report.degree = k;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    StudyOptions level_options = options;
    if (i + 1 != levels.size()) level_options.dump_matrix_path.clear();
    report.levels.push_back(run_level(c, levels[i], k, level_options));
  }
  return report;
}

namespace {

std::string sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", value);
  return buffer;
}

std::string sig4(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", value);
  return buffer;
}

std::string fixed4(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

// Order of a quantity on level i against level i-1, when both levels succeeded.
template <typename Getter>
std::optional<double> order_at(const ConvergenceReport& report, std::size_t i, Getter get) {
  if (i == 0) return std::nullopt;
  const LevelResult& coarse = report.levels[i - 1];
  const LevelResult& fine = report.levels[i];
  if (!coarse.ok() || !fine.ok()) return std::nullopt;
  return observed_order(get(coarse.errors), get(fine.errors), coarse.n, fine.n);
}

std::string optional_field(const std::optional<double>& value, std::string (*format)(double)) {
  return value ? format(*value) : std::string();
}

}  // namespace

std::string emit(const ConvergenceReport& report, ReportFormat format, bool include_timing) {
  const auto l2 = [](const ErrorReport& e) { return e.l2_e0; };
  const auto h1 = [](const ErrorReport& e) { return e.h1_e0; };
  const auto ru = [](const ErrorReport& e) { return e.resid_u; };
  const auto rl = [](const ErrorReport& e) { return e.resid_lambda; };

  std::ostringstream os;
  if (format == ReportFormat::Csv) {
    os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
      const LevelResult& level = report.levels[i];
      os << report.case_id << ',' << report.degree << ',' << level.n << ',' << sci(level.h) << ',';
      if (level.ok()) {
        const ErrorReport& e = level.errors;
        os << sci(e.l2_e0) << ',' << optional_field(order_at(report, i, l2), sci) << ',' << sci(e.h1_e0) << ','
           << optional_field(order_at(report, i, h1), sci) << ',' << sci(e.resid_u) << ','
           << optional_field(order_at(report, i, ru), sci) << ',' << sci(e.resid_lambda) << ','
           << sci(e.stab_u) << ',';
      } else {
        os << ",,,,,,,,";
      }
      if (include_timing) os << sci(level.wall_ms);
      os << '\n';
    }
    return os.str();
  }

  os << "Case " << report.case_id << ", k = " << report.degree << "\n\n";
  os << "| 1/h | ‖∇e_0‖ | order | ‖e_0‖ | order | \\|\\|\\|e_h\\|\\|\\|_{h,Γd} | order | \\|\\|\\|λ_h\\|\\|\\|_{h,Γn^c} | order |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const LevelResult& level = report.levels[i];
    os << "| " << level.n << " | ";
    if (!level.ok()) {
      os << "failed (" << status_name(level.status) << ") | | | | | | | |\n";
      continue;
    }
    const ErrorReport& e = level.errors;
    os << sig4(e.h1_e0) << " | " << optional_field(order_at(report, i, h1), fixed4) << " | " << sig4(e.l2_e0)
       << " | " << optional_field(order_at(report, i, l2), fixed4) << " | " << sig4(e.resid_u) << " | "
       << optional_field(order_at(report, i, ru), fixed4) << " | " << sig4(e.resid_lambda) << " | "
       << optional_field(order_at(report, i, rl), fixed4) << " |\n";
  }
  return os.str();
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid refinement level '" + item + "'");
    }
    if (used != item.size() || value < 1) throw std::invalid_argument("invalid refinement level '" + item + "'");
    if (!levels.empty() && value <= levels.back()) {
      throw std::invalid_argument("refinement levels must be strictly ascending");
    }
    levels.push_back(value);
  }
  if (levels.empty()) throw std::invalid_argument("empty refinement ladder");
  return levels;
}

}  // namespace pdwg
