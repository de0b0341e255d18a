#include "vise/core_math.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace vise {

namespace {

std::atomic<double> g_cdf_scale{1.0};

// Relative slack when snapping alpha * n to an integer class boundary.
constexpr double kClassSnap = 1e-9;

}  // namespace

double std_normal_pdf(double x) noexcept {
  return std::numbers::inv_sqrtpi / std::numbers::sqrt2 * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) noexcept {
  const double scale = g_cdf_scale.load(std::memory_order_relaxed);
  if (scale != 1.0) x *= scale;
  // erfc keeps full relative accuracy in the lower tail, where 1 + erf
  // would cancel.
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double log_binomial_pmf(std::int64_t x, std::int64_t n, double p) {
  if (n < 0 || x < 0 || x > n) {
    throw DomainError("binomial_pmf: need 0 <= x <= n, got x=" + std::to_string(x) +
                      " n=" + std::to_string(n));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binomial_pmf: p must lie in [0,1]");
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (p == 0.0) return x == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return x == n ? 0.0 : kNegInf;
  const auto nd = static_cast<double>(n);
  const auto xd = static_cast<double>(x);
  const double log_choose =
      std::lgamma(nd + 1.0) - std::lgamma(xd + 1.0) - std::lgamma(nd - xd + 1.0);
  return log_choose + xd * std::log(p) + (nd - xd) * std::log1p(-p);
}

double binomial_pmf(std::int64_t x, std::int64_t n, double p) {
  return std::exp(log_binomial_pmf(x, n, p));
}

Environment::Environment(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu)) throw DomainError("Environment: mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("Environment: sigma must be positive and finite");
  }
  if (!std::isfinite(mu / sigma)) throw DomainError("Environment: mu/sigma overflows");
}

Environment Environment::from_rho(double rho, double sigma) {
  return Environment(rho * sigma, sigma);
}

EnvironmentMoments Environment::moments() const noexcept {
  const double r = rho();
  return {std_normal_cdf(r), std_normal_cdf(-r), std_normal_pdf(r)};
}

Environment Environment::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("Environment::scaled: factor must be positive");
  return Environment(mu_ * c, sigma_ * c);
}

VotingRule::VotingRule(std::int64_t n, double alpha) : n_(n), alpha_(alpha) {
  if (n < 1) throw DomainError("VotingRule: n must be at least 1");
  const double lo = -1.0 / static_cast<double>(n);
  if (!(alpha >= lo - kClassSnap && alpha <= 1.0 + kClassSnap)) {
    throw DomainError("VotingRule: alpha must lie in [-1/n, 1], got " + std::to_string(alpha));
  }
}

VotingRule VotingRule::from_class(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < -1 || k > n) throw DomainError("VotingRule::from_class: need -1 <= k <= n");
  return VotingRule(n, static_cast<double>(k) / static_cast<double>(n));
}

std::int64_t threshold_class(double alpha, std::int64_t n) noexcept {
  const double scaled = alpha * static_cast<double>(n);
  const double nearest = std::round(scaled);
  const double snapped =
      std::abs(scaled - nearest) <= kClassSnap * std::max(1.0, std::abs(scaled)) ? nearest
                                                                                : std::floor(scaled);
  auto k = static_cast<std::int64_t>(snapped);
  if (k < -1) k = -1;
  if (k > n) k = n;
  return k;
}

std::int64_t min_yes_votes(const VotingRule& rule) noexcept {
  return threshold_class(rule.alpha(), rule.n()) + 1;
}

namespace testing {

ScopedCdfDistortion::ScopedCdfDistortion(double scale)
    : previous_(g_cdf_scale.exchange(scale)) {}

ScopedCdfDistortion::~ScopedCdfDistortion() { g_cdf_scale.store(previous_); }

}  // namespace testing

}  // namespace vise
