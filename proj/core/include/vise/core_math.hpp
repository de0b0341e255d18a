#pragma once

// Scalar probability primitives and the basic domain types of the voting
// model: the normal environment that generates proposals and the
// alpha-majority voting rule.

#include <cstdint>
#include <stdexcept>

namespace vise {

/// Thrown when an input lies outside the domain of a primitive
/// (negative sigma, x > n in a binomial pmf, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Standard normal density, (1/sqrt(2 pi)) exp(-x^2/2).
double std_normal_pdf(double x) noexcept;

/// Standard normal distribution function. Absolute error is well below
/// 1e-10 on the whole real line and Phi(x) + Phi(-x) == 1 to rounding.
double std_normal_cdf(double x) noexcept;

/// log of C(n,x) p^x (1-p)^(n-x). Returns -inf for impossible outcomes
/// (e.g. x > 0 with p == 0).
double log_binomial_pmf(std::int64_t x, std::int64_t n, double p);

/// C(n,x) p^x (1-p)^(n-x), evaluated in log space so that n up to 1e6
/// neither overflows nor underflows prematurely.
double binomial_pmf(std::int64_t x, std::int64_t n, double p);

/// Moments of the normal environment expressed in standard units:
/// p = Phi(rho) is the chance that one proposed increment is positive,
/// q = Phi(-rho) the chance it is not, and f = phi(rho).
struct EnvironmentMoments {
  double p;
  double q;
  double f;
};

/// Proposal-generating distribution N(mu, sigma).
class Environment {
 public:
  Environment(double mu, double sigma);

  /// Builds the environment with mean rho * sigma.
  static Environment from_rho(double rho, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  /// Inverse coefficient of variation mu / sigma.
  double rho() const noexcept { return mu_ / sigma_; }
  EnvironmentMoments moments() const noexcept;

  /// Same shape parameter, every capital quantity multiplied by c > 0.
  Environment scaled(double c) const;

 private:
  double mu_;
  double sigma_;
};

/// Society size n together with the strict relative acceptance threshold
/// alpha: a proposal passes iff (yes votes) / n > alpha.
class VotingRule {
 public:
  VotingRule(std::int64_t n, double alpha);

  /// Threshold k/n for k in {-1, 0, ..., n}; these n+2 values are the only
  /// essentially different thresholds for a society of n.
  static VotingRule from_class(std::int64_t n, std::int64_t k);

  std::int64_t n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }

 private:
  std::int64_t n_;
  double alpha_;
};

/// floor(alpha * n) snapped to the nearest integer when alpha * n is within
/// rounding noise of it, so that alpha = k/n lands in class k. Clamped to
/// [-1, n].
std::int64_t threshold_class(double alpha, std::int64_t n) noexcept;

/// Smallest number of yes votes that passes the rule, integer_part(alpha n)
/// + 1. Ranges over {0, ..., n+1}: 0 accepts everything, n+1 nothing.
std::int64_t min_yes_votes(const VotingRule& rule) noexcept;

namespace testing {

/// Fault injection for the verification harness. While alive, every call
/// to std_normal_cdf evaluates Phi(scale * x) instead of Phi(x). Not meant
/// for concurrent use with unrelated computations.
class ScopedCdfDistortion {
 public:
  explicit ScopedCdfDistortion(double scale);
  ~ScopedCdfDistortion();
  ScopedCdfDistortion(const ScopedCdfDistortion&) = delete;
  ScopedCdfDistortion& operator=(const ScopedCdfDistortion&) = delete;

 private:
  double previous_;
};

}  // namespace testing

}  // namespace vise
