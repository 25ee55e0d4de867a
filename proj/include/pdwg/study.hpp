#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdwg/cases.hpp"
#include "pdwg/norms.hpp"
#include "pdwg/system.hpp"

namespace pdwg {

/// Errors below this floor are treated as machine-precision saturation and
/// get no observed order.
inline constexpr double kOrderFloor = 1e-12;

struct LevelResult {
  int n = 0;
  double h = 0.0;
  SolveStatus status = SolveStatus::Ok;
  std::string message;
  ErrorReport errors;
  double wall_ms = 0.0;
  int system_size = 0;
  /// Filled only when requested in StudyOptions.
  std::optional<double> condition;

  bool ok() const { return status != SolveStatus::Singular; }
};

struct ConvergenceReport {
  std::string case_id;
  int degree = 1;
  std::vector<LevelResult> levels;

  bool any_failed() const;
};

struct StudyOptions {
  bool estimate_condition = false;
  /// When set, the coupled matrix of the finest level is written here in
  /// coordinate format.
  std::string dump_matrix_path;
};

/// Rate between a coarse level n_c and a fine level n_f:
/// log(err_c / err_f) / log(n_f / n_c), i.e. log2 of the ratio for doubling.
std::optional<double> observed_order(double coarse_error, double fine_error, int coarse_n, int fine_n);

/// Mesh, assembly, solve and error evaluation for one refinement level.
LevelResult run_level(const CaseSpec& c, int n, int k, const StudyOptions& options = {});

/// Runs the levels in order; a failing level is recorded and the study continues.
ConvergenceReport run_study(const CaseSpec& c, const std::vector<int>& levels, int k,
                            const StudyOptions& options = {});

enum class ReportFormat { Csv, Markdown };

/// csv: one row per level under the fixed header; floats as %.3e, missing
/// orders as empty fields. markdown: error and order columns per level.
/// With include_timing false the wall_ms field is left empty so output is
/// reproducible byte for byte.
std::string emit(const ConvergenceReport& report, ReportFormat format, bool include_timing = true);

inline constexpr const char* kCsvHeader =
    "case,k,n,h,l2_e0,order_l2,h1_e0,order_h1,resid_u,order_resid,resid_lambda,stab_u,wall_ms";

/// Parses "1,2,4,8"; throws std::invalid_argument unless strictly ascending positive integers.
std::vector<int> parse_levels(const std::string& text);

}  // namespace pdwg
