#pragma once

#include <string>
#include <vector>

#include "splb/corpus.hpp"

namespace splb {

/// Parsed experiment description; the JSON schema is documented in the
/// README.  kind is one of l2, ritz, q, reduced, tensor, mapped, multipatch;
/// subkind picks the projector inside the tensor and mapped kinds.
struct ExperimentConfig {
  std::string kind;
  std::string subkind;
  int q = 1;
  int parity = 0;
  std::string variant = "strict";
  double a = 0, b = 1;
  int degree = 1;
  int smoothness = 0;
  int degree2 = 0;
  int smoothness2 = 0;
  int r = 1;
  int ell = 0;
  int ell1 = 0, ell2 = 0;
  std::string target_id;
  CorpusParams target;
  double omega2 = 3.141592653589793;  // second factor of the sin2d target
  double phase2 = 0;
  std::vector<int> schedule;   // interior breakpoint counts
  std::vector<double> knots;   // explicit breakpoints (single run)
  std::string map = "identity";
  std::string layout = "two-patch-square";
  int oversample = 4;
};

/// Strict parse: every key must be known, required keys must be present, and
/// cross-field constraints are checked; violations throw invalid-config.
ExperimentConfig parse_config(const std::string& json_text);

struct ReportRow {
  int p = 0, k = 0, q = 0, ell = 0, r = 0, N = 0;
  double h = 0, error = 0, bound = 0, effectivity = 0, order = 0;
  bool skipped = false;
  std::string reason;
};

/// Rows in config order; pass is the run verdict.  csv() is byte-stable:
/// fixed column order, floats at 17 significant digits, skipped rows as
/// comment lines with a machine-readable reason.
struct ErrorReport {
  std::vector<ReportRow> rows;
  bool pass = true;
  std::string csv() const;
};

/// Least-squares slope of log(error) against log(h) over the last <= 4
/// points; the coarsest point of the window is dropped when keeping it pushes
/// R^2 below 0.999.  Fewer than two points give 0.
double fit_order(const std::vector<double>& hs, const std::vector<double>& errors);

/// One row per space/bound pair; pass iff every computed effectivity is at
/// most 1 + 1e-9.
ErrorReport run_verify(const ExperimentConfig& config);

/// Same rows; pass iff the fitted order over the schedule reaches the
/// predicted rate minus 0.2.  Needs a schedule of at least four refinements.
ErrorReport run_convergence(const ExperimentConfig& config);

} // namespace splb
