#pragma once

// Test-only reference computations. None of these call into the library's
// probability code paths: they use series, quadrature and enumeration in
// long double so they can serve as independent checks.

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <vector>

namespace vise::oracle {

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

/// Phi(x) from the all-positive series
/// erf(z) = (2z/sqrt(pi)) e^{-z^2} sum_k (2z^2)^k / (1*3*...*(2k+1)).
inline long double normal_cdf(long double x) {
  const long double z = std::fabs(x) / std::sqrt(2.0L);
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 2000; ++k) {
    term *= 2.0L * z * z / (2.0L * k + 1.0L);
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  const long double erf_z = 2.0L * z / std::sqrt(kPi) * std::exp(-z * z) * sum;
  return x >= 0 ? 0.5L * (1.0L + erf_z) : 0.5L * (1.0L - erf_z);
}

inline long double normal_pdf(long double x) {
  return std::exp(-0.5L * x * x) / std::sqrt(2.0L * kPi);
}

/// Composite Simpson rule with an even number of panels.
inline long double simpson(const std::function<long double(long double)>& g, long double a,
                           long double b, int panels = 20000) {
  const long double h = (b - a) / panels;
  long double s = g(a) + g(b);
  for (int i = 1; i < panels; ++i) s += g(a + i * h) * (i % 2 == 1 ? 4.0L : 2.0L);
  return s * h / 3.0L;
}

/// Binomial pmf by multiplicative recurrence over all x = 0..n.
inline std::vector<long double> binomial_row(std::int64_t n, long double p) {
  std::vector<long double> row(static_cast<std::size_t>(n + 1));
  long double q = 1.0L - p;
  long double v = std::pow(q, static_cast<long double>(n));
  row[0] = v;
  for (std::int64_t x = 1; x <= n; ++x) {
    v *= static_cast<long double>(n - x + 1) / static_cast<long double>(x) * p / q;
    row[static_cast<std::size_t>(x)] = v;
  }
  return row;
}

/// Expected one-step increment of a single agent, seen from that agent: the
/// other n-1 yes votes are Bin(n-1, p), and the agent's own increment X is
/// added to the tally iff X > 0. With need = min yes votes,
///   M = P(Y >= need-1) E[X; X>0] + P(Y >= need) E[X; X<=0],
/// where both partial expectations are integrated numerically.
inline long double agent_view_increment(long double mu, long double sigma, std::int64_t n,
                                        std::int64_t need) {
  const long double p = normal_cdf(mu / sigma);
  const auto row = binomial_row(n - 1, p);
  auto tail = [&](std::int64_t m) {
    long double t = 0.0L;
    for (std::int64_t y = std::max<std::int64_t>(m, 0); y <= n - 1; ++y) t += row[static_cast<std::size_t>(y)];
    return t;
  };
  auto density = [&](long double x) { return x * normal_pdf((x - mu) / sigma) / sigma; };
  const long double reach = std::fabs(mu) + 12.0L * sigma;
  const long double pos = simpson(density, 0.0L, reach);
  const long double neg = simpson(density, -reach, 0.0L);
  return tail(need - 1) * pos + tail(need) * neg;
}

}  // namespace vise::oracle
