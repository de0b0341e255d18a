#include "vise/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace vise {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Limit of the increment when the environment is so lopsided that every
// agent votes the same way almost surely.
bool is_degenerate(const Environment& env) {
  const EnvironmentMoments m = env.moments();
  return std::abs(env.rho()) > kTailCutoff || m.p == 0.0 || m.q == 0.0;
}

std::optional<double> tail_limit(const Environment& env, const VotingRule& rule,
                                 TailPolicy tails) {
  if (!is_degenerate(env)) return std::nullopt;
  const double rho = env.rho();
  const std::int64_t need = min_yes_votes(rule);
  const std::int64_t yes = rho > 0.0 ? rule.n() : 0;
  const bool accepted = yes >= need;
  const double value = accepted ? env.mu() : 0.0;
  if (tails == TailPolicy::kThrow) throw DegenerateEnvironment(rho, accepted, value);
  return value;
}

// Suffix sums S[k] = sum_{x=k}^{n} (rho + (f/q)(x/(pn) - 1)) b(x|n) for
// k = 0..n+1 (S[n+1] = 0), accumulated from x = n downwards.
std::vector<double> increment_suffix_sums(const Environment& env, std::int64_t n,
                                          std::int64_t lowest) {
  const double rho = env.rho();
  const EnvironmentMoments m = env.moments();
  const auto nd = static_cast<double>(n);
  std::vector<double> suffix(static_cast<std::size_t>(n + 2), 0.0);
  CompensatedSum acc;
  for (std::int64_t x = n; x >= lowest; --x) {
    const double weight = binomial_pmf(x, n, m.p);
    if (weight > 0.0) {
      const double conditional = rho + (m.f / m.q) * (static_cast<double>(x) / (m.p * nd) - 1.0);
      acc.add(conditional * weight);
    }
    suffix[static_cast<std::size_t>(x)] = acc.value();
  }
  return suffix;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kExactSum: return "exact";
    case Method::kNormalApprox: return "approx";
    case Method::kMonteCarlo: return "mc";
  }
  return "unknown";
}

std::string_view to_string(ApproxValidity v) noexcept {
  switch (v) {
    case ApproxValidity::kStrong: return "strong";
    case ApproxValidity::kAcceptable: return "acceptable";
    case ApproxValidity::kWeak: return "weak";
  }
  return "unknown";
}

DegenerateEnvironment::DegenerateEnvironment(double rho, bool all_accepted, double limit_value)
    : std::domain_error("degenerate environment at rho=" + std::to_string(rho) +
                        (all_accepted ? ": every proposal is accepted"
                                      : ": every proposal is rejected")),
      rho_(rho),
      all_accepted_(all_accepted),
      limit_value_(limit_value) {}

IncrementResult expected_increment_exact(const Environment& env, const VotingRule& rule,
                                         TailPolicy tails) {
  if (rule.n() > 1'000'000) throw DomainError("expected_increment_exact: n must not exceed 1e6");
  if (auto limit = tail_limit(env, rule, tails)) return {*limit, Method::kExactSum, std::nullopt};
  const std::int64_t need = min_yes_votes(rule);
  if (need > rule.n()) return {0.0, Method::kExactSum, std::nullopt};
  const auto suffix = increment_suffix_sums(env, rule.n(), need);
  return {env.sigma() * suffix[static_cast<std::size_t>(need)], Method::kExactSum, std::nullopt};
}

ApproxTerms approx_terms(const Environment& env, const VotingRule& rule) {
  const EnvironmentMoments m = env.moments();
  const auto nd = static_cast<double>(rule.n());
  const double spread = std::sqrt(m.q * m.p * nd);
  const auto k = static_cast<double>(threshold_class(rule.alpha(), rule.n()));
  return {(m.p * nd - k - 0.5) / spread, env.sigma() * m.f / spread};
}

IncrementResult expected_increment_approx(const Environment& env, const VotingRule& rule,
                                          TailPolicy tails) {
  if (auto limit = tail_limit(env, rule, tails)) {
    return {*limit, Method::kNormalApprox, std::nullopt};
  }
  const ApproxTerms t = approx_terms(env, rule);
  const double value =
      env.sigma() * (env.rho() * std_normal_cdf(t.tau)) + t.nu * std_normal_pdf(t.tau);
  return {value, Method::kNormalApprox, std::nullopt};
}

ApproxValidity approx_validity(const Environment& env, const VotingRule& rule) {
  const EnvironmentMoments m = env.moments();
  const double qpn = m.q * m.p * static_cast<double>(rule.n());
  const bool central = m.p > 0.1 && m.p < 0.9;
  if (central && qpn >= 9.0) return ApproxValidity::kStrong;
  if ((central && qpn > 5.0) || qpn > 25.0) return ApproxValidity::kAcceptable;
  return ApproxValidity::kWeak;
}

double neutral_mean_increment(double sigma, std::int64_t n) {
  if (n < 1 || n % 2 == 0) throw DomainError("neutral_mean_increment: n must be odd");
  if (!(sigma > 0.0)) throw DomainError("neutral_mean_increment: sigma must be positive");
  return sigma / (std::numbers::pi * std::sqrt(static_cast<double>(n)));
}

double rescaled_curve_value(std::int64_t base_n, std::int64_t target_n, double rho, double sigma,
                            double alpha) {
  if (base_n < 1 || target_n < 1) throw DomainError("rescaled_curve_value: n must be positive");
  const double ratio = static_cast<double>(target_n) / static_cast<double>(base_n);
  const double stretch = std::sqrt(ratio);
  const Environment env = Environment::from_rho(rho * stretch, sigma);
  return expected_increment_exact(env, VotingRule(base_n, alpha)).value / stretch;
}

double optimal_threshold_estimate(double rho) {
  const double p = std_normal_cdf(rho);
  const double q = std_normal_cdf(-rho);
  const double f = std_normal_pdf(rho);
  return p * (1.0 - q * rho / f);
}

std::int64_t optimal_threshold_class(double rho, std::int64_t n) {
  if (n < 1) throw DomainError("optimal_threshold_class: n must be positive");
  return threshold_class(optimal_threshold_estimate(rho), n);
}

double optimal_threshold_ladder(double rho, std::int64_t n) {
  return (static_cast<double>(optimal_threshold_class(rho, n)) + 0.5) / static_cast<double>(n);
}

ThresholdEstimate optimal_threshold_bruteforce(const Environment& env, std::int64_t n) {
  if (n < 1 || n > 10'000) throw DomainError("optimal_threshold_bruteforce: need 1 <= n <= 1e4");
  ThresholdEstimate est;
  est.alpha_hat = optimal_threshold_estimate(env.rho());
  est.ladder_class = optimal_threshold_class(env.rho(), n);
  est.alpha_ladder = optimal_threshold_ladder(env.rho(), n);
  est.class_halfwidth = 0.5 / static_cast<double>(n);

  // Class k accepts iff yes >= k + 1, so its value is sigma * S[k + 1].
  std::vector<double> values(static_cast<std::size_t>(n + 2));
  if (is_degenerate(env)) {
    for (std::int64_t k = -1; k <= n; ++k) {
      values[static_cast<std::size_t>(k + 1)] =
          expected_increment_exact(env, VotingRule::from_class(n, k)).value;
    }
  } else {
    const auto suffix = increment_suffix_sums(env, n, 0);
    for (std::int64_t k = -1; k <= n; ++k) {
      values[static_cast<std::size_t>(k + 1)] = env.sigma() * suffix[static_cast<std::size_t>(k + 1)];
    }
  }

  std::int64_t best = -1;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (values[static_cast<std::size_t>(k + 1)] > values[static_cast<std::size_t>(best + 1)]) best = k;
  }
  est.bruteforce_class = best;
  est.alpha_bruteforce = static_cast<double>(best) / static_cast<double>(n);
  est.bruteforce_value = values[static_cast<std::size_t>(best + 1)];
  return est;
}

double max_expected_increment(const Environment& env, std::int64_t n) {
  if (n < 1) throw DomainError("max_expected_increment: n must be positive");
  const EnvironmentMoments m = env.moments();
  if (m.p == 0.0 || m.q == 0.0) return env.mu() > 0.0 ? env.mu() : 0.0;
  const double nu = env.sigma() * m.f / std::sqrt(m.q * m.p * static_cast<double>(n));
  const double z = env.mu() / nu;
  return env.mu() * std_normal_cdf(z) + nu * std_normal_pdf(z);
}

double threshold_sensitivity(double rho) {
  const double p = std_normal_cdf(rho);
  const double q = std_normal_cdf(-rho);
  const double f = std_normal_pdf(rho);
  return ((f + p * rho) * (f - q * rho) - q * p) / f;
}

double foc_residual(double alpha, double rho) {
  const double p = std_normal_cdf(rho);
  const double q = std_normal_cdf(-rho);
  const double f = std_normal_pdf(rho);
  return rho + (alpha - p) * f / (q * p);
}

double smoothed_approx_increment(const Environment& env, std::int64_t n, double alpha) {
  if (n < 1) throw DomainError("smoothed_approx_increment: n must be positive");
  const EnvironmentMoments m = env.moments();
  const auto nd = static_cast<double>(n);
  const double tau = (m.p - alpha) * std::sqrt(nd / (m.q * m.p));
  const double nu = env.sigma() * m.f / std::sqrt(m.q * m.p * nd);
  return env.mu() * std_normal_cdf(tau) + nu * std_normal_pdf(tau);
}

}  // namespace vise
