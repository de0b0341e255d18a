#pragma once

// Sweep harness: increment curves over rho, the pit of losses, the optimal
// threshold spline and ladder, the sensitivity curve, and the verification
// suite that cross-checks the closed forms against brute force and Monte
// Carlo. Every table is a deterministic function of its arguments.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vise/analytic.hpp"
#include "vise/csv.hpp"

namespace vise::experiments {

struct RhoRange {
  double lo = -2.0;
  double hi = 2.0;
  std::int64_t points = 81;
};

/// points equally spaced values from lo to hi inclusive; points >= 2.
std::vector<double> uniform_grid(const RhoRange& range);

struct CurvePoint {
  double rho = 0.0;
  double value = 0.0;
  Method method = Method::kExactSum;
  std::optional<double> std_error;
  ApproxValidity validity = ApproxValidity::kWeak;
};

struct SweepSpec {
  std::int64_t n = 21;
  double sigma = 10.0;
  double alpha = 0.5;
  RhoRange range;
  std::vector<Method> methods{Method::kExactSum};
  std::uint64_t proposals = 1'000'000;  // Monte Carlo budget per grid point
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// One point per (rho, method), sorted by rho then by the order of methods.
std::vector<CurvePoint> sweep_increment(const SweepSpec& spec);
csv::Table sweep_table(const SweepSpec& spec, const std::vector<CurvePoint>& curve);

struct PitReport {
  double right_zero = 0.0;          // zero crossing to the right of the minimum
  double min_rho = 0.0;
  double min_value = 0.0;           // negative: the depth of the pit
  double left_epsilon_bound = 0.0;  // largest rho <= min_rho with |M| <= epsilon * sigma
  double epsilon = 1e-3;
};

/// Locates the pit of losses of the exact increment curve inside
/// rho in [-3, 0]: a 0.01 scan, golden-section refinement of the minimum,
/// and bisection for the boundaries (tolerance well under 1e-4 in rho).
/// Empty when the curve is nonnegative on the whole window.
std::optional<PitReport> pit_report(std::int64_t n, double sigma, double alpha,
                                    double epsilon = 1e-3);
csv::Table pit_table(std::int64_t n, double sigma, double alpha, const std::optional<PitReport>& r);

struct SplinePoint {
  double rho = 0.0;
  std::int64_t best_class = 0;  // k: the optimal thresholds are [k/n, (k+1)/n)
  double best_alpha = 0.0;      // k/n
  double best_value = 0.0;
};

/// At each rho, the best of the n+2 essentially different thresholds for
/// the exact increment.
std::vector<SplinePoint> optimal_spline(std::int64_t n, double sigma, const RhoRange& range);
csv::Table spline_table(std::int64_t n, double sigma, const std::vector<SplinePoint>& spline);

struct LadderRow {
  double rho = 0.0;
  double alpha_hat = 0.0;
  double alpha_ladder = 0.0;
  double alpha_bruteforce = 0.0;
  std::int64_t ladder_class = 0;
  std::int64_t bruteforce_class = 0;
};

struct LadderTable {
  std::vector<LadderRow> rows;
  double agreement_rate = 0.0;
  std::int64_t disagreements = 0;
  std::int64_t max_class_gap = 0;  // largest |ladder class - brute-force class|
};

LadderTable ladder_table(std::int64_t n, const RhoRange& range);
csv::Table ladder_csv(std::int64_t n, const LadderTable& t);

struct SensitivityRow {
  double rho = 0.0;
  double alpha_hat = 0.0;
  double minus_derivative = 0.0;
  double matched_normal_density = 0.0;  // phi(rho) scaled to equal minus_derivative at 0
};

std::vector<SensitivityRow> sensitivity_table(const RhoRange& range);
csv::Table sensitivity_csv(const std::vector<SensitivityRow>& rows);

struct VerifyOptions {
  std::uint64_t seed = 20160119;
  std::uint64_t budget = 1'000'000;  // Monte Carlo proposals per cell
  double se_multiplier = 3.0;        // tolerance in standard errors for the oracle cells
  unsigned threads = 0;
  std::optional<double> cdf_distortion;  // fault injection: Phi(x) -> Phi(scale x)
};

struct Check {
  std::string name;
  bool passed = false;
  double metric = 0.0;  // worst observed deviation, or count, depending on the check
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool all_passed() const;
  const Check* find(const std::string& name) const;
  /// Flat key=value lines: check.<name>=pass|fail, check.<name>.metric=...,
  /// check.<name>.detail=..., and a final overall=pass|fail.
  std::string to_key_value() const;
};

/// Runs the oracle suite. Budgets below 1e5 proposals per cell are rejected.
VerifyReport verify(const VerifyOptions& options);

}  // namespace vise::experiments
