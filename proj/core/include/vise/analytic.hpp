#pragma once

// Closed-form engine for a society of egoists voting under an alpha-majority
// rule in a normal environment: the expected one-step capital increment of
// an agent (exact binomial sum and its normal approximation), the optimal
// acceptance threshold estimate with its quantized ladder, the maximum
// expected increment, and the sensitivity of the optimal threshold.

#include <cstdint>
#include <optional>
#include <string_view>

#include "vise/core_math.hpp"

namespace vise {

enum class Method { kExactSum, kNormalApprox, kMonteCarlo };

std::string_view to_string(Method m) noexcept;

/// An expected one-step capital increment and where it came from.
/// std_error is present only for Monte Carlo estimates.
struct IncrementResult {
  double value = 0.0;
  Method method = Method::kExactSum;
  std::optional<double> std_error;
};

/// Intermediate quantities of the normal approximation.
struct ApproxTerms {
  double tau;  // standardized distance of the expected yes-count above the bar
  double nu;   // sigma * f / sqrt(qpn)
};

/// Raised by the strict tail policy when |rho| is so large that p or q is
/// numerically 0 or 1. all_accepted tells the caller which limit applies:
/// the rule then either accepts every proposal (value mu) or none (value 0).
class DegenerateEnvironment : public std::domain_error {
 public:
  DegenerateEnvironment(double rho, bool all_accepted, double limit_value);
  double rho() const noexcept { return rho_; }
  bool all_accepted() const noexcept { return all_accepted_; }
  double limit_value() const noexcept { return limit_value_; }

 private:
  double rho_;
  bool all_accepted_;
  double limit_value_;
};

/// Beyond this |rho| the increment formulas are replaced by their limits.
inline constexpr double kTailCutoff = 8.0;

enum class TailPolicy {
  kShortCircuit,  // return the limit value (default)
  kThrow,         // raise DegenerateEnvironment
};

/// sigma * sum_{x = min_yes}^{n} (rho + (f/q)(x/(pn) - 1)) b(x|n).
/// Log-space terms, compensated summation. n <= 1e6.
IncrementResult expected_increment_exact(const Environment& env, const VotingRule& rule,
                                         TailPolicy tails = TailPolicy::kShortCircuit);

/// sigma * (rho Phi(tau) + f/sqrt(qpn) phi(tau)),
/// tau = (pn - integer_part(alpha n) - 0.5) / sqrt(qpn).
IncrementResult expected_increment_approx(const Environment& env, const VotingRule& rule,
                                          TailPolicy tails = TailPolicy::kShortCircuit);

ApproxTerms approx_terms(const Environment& env, const VotingRule& rule);

enum class ApproxValidity { kStrong, kAcceptable, kWeak };

std::string_view to_string(ApproxValidity v) noexcept;

/// Rule-of-thumb quality of the normal approximation to b(.|n):
/// strong when qpn >= 9 and 0.1 < p < 0.9; acceptable when qpn > 5 with p
/// in that band, or qpn > 25 otherwise; weak otherwise.
ApproxValidity approx_validity(const Environment& env, const VotingRule& rule);

/// sigma / (pi sqrt(n)): the approximate increment for odd n, rho = 0 and
/// simple majority. Throws DomainError for even n.
double neutral_mean_increment(double sigma, std::int64_t n);

/// Predicts the exact increment curve of a society of target_n from the one
/// of base_n: sqrt(base/target) * phi_base(rho * sqrt(target/base)).
double rescaled_curve_value(std::int64_t base_n, std::int64_t target_n, double rho,
                            double sigma, double alpha);

/// Continuous estimate of the optimal acceptance threshold,
/// Phi(rho) (1 - rho Phi(-rho) / phi(rho)). Depends on rho only.
double optimal_threshold_estimate(double rho);

/// Centre of the equivalence class containing the estimate,
/// (integer_part(alpha_hat n) + 0.5) / n.
double optimal_threshold_ladder(double rho, std::int64_t n);

/// Equivalence class index integer_part(alpha_hat n), clamped to [-1, n].
std::int64_t optimal_threshold_class(double rho, std::int64_t n);

struct ThresholdEstimate {
  double alpha_hat = 0.0;
  double alpha_ladder = 0.0;
  double alpha_bruteforce = 0.0;   // k*/n, the argmax over {-1/n, 0, ..., 1}
  std::int64_t ladder_class = 0;
  std::int64_t bruteforce_class = 0;
  double bruteforce_value = 0.0;   // exact increment at the argmax
  double class_halfwidth = 0.0;    // 1/(2n)
};

/// Evaluates the exact increment at every essentially different threshold
/// and returns the argmax; ties go to the smaller threshold. n <= 1e4.
ThresholdEstimate optimal_threshold_bruteforce(const Environment& env, std::int64_t n);

/// mu Phi(mu/nu) + nu phi(mu/nu) with nu = sigma f / sqrt(qpn): expected
/// increment when voting with the optimal threshold.
double max_expected_increment(const Environment& env, std::int64_t n);

/// d alpha_hat / d rho = ((f + p rho)(f - q rho) - qp) / f.
double threshold_sensitivity(double rho);

/// rho + (alpha - p) f / (qp); vanishes at the optimal threshold estimate.
double foc_residual(double alpha, double rho);

/// Normal approximation with the integer part replaced by its continuous
/// surrogate, tau = (p - alpha) sqrt(n / (qp)). Coincides with
/// expected_increment_approx at alpha = (k + 0.5)/n and is differentiable in
/// alpha; its stationary point is the optimal threshold estimate.
double smoothed_approx_increment(const Environment& env, std::int64_t n, double alpha);

}  // namespace vise
