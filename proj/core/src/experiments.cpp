#include "vise/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "vise/simulator.hpp"

namespace vise::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double exact_at(double rho, std::int64_t n, double sigma, double alpha) {
  return expected_increment_exact(Environment::from_rho(rho, sigma), VotingRule(n, alpha)).value;
}

// Shrinks [lo, hi] around a sign change of g, keeping g(lo) <= 0 < g(hi) or
// the mirror. Returns the endpoint whose value is closer to zero.
double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double glo = g(lo);
  double ghi = g(hi);
  for (int i = 0; i < 200 && std::abs(hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm <= 0.0) == (glo <= 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return std::abs(glo) <= std::abs(ghi) ? lo : hi;
}

double golden_section_min(const std::function<double(double)>& g, double lo, double hi,
                          double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > tol) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> uniform_grid(const RhoRange& range) {
  if (range.points < 2) throw DomainError("uniform_grid: need at least 2 points");
  if (!(range.hi > range.lo)) throw DomainError("uniform_grid: need lo < hi");
  std::vector<double> grid(static_cast<std::size_t>(range.points));
  const double step = (range.hi - range.lo) / static_cast<double>(range.points - 1);
  for (std::int64_t i = 0; i < range.points; ++i) {
    grid[static_cast<std::size_t>(i)] = range.lo + step * static_cast<double>(i);
  }
  grid.back() = range.hi;
  return grid;
}

// ---------------------------------------------------------------------------
// Increment sweeps

std::vector<CurvePoint> sweep_increment(const SweepSpec& spec) {
  const std::vector<double> grid = uniform_grid(spec.range);
  const VotingRule rule(spec.n, spec.alpha);

  std::vector<Environment> envs;
  envs.reserve(grid.size());
  for (double rho : grid) envs.push_back(Environment::from_rho(rho, spec.sigma));

  std::vector<McCurvePoint> mc;
  if (std::find(spec.methods.begin(), spec.methods.end(), Method::kMonteCarlo) !=
      spec.methods.end()) {
    mc = estimate_increment_curve(envs, rule, spec.proposals, spec.seed, spec.threads);
  }

  std::vector<CurvePoint> out;
  out.reserve(grid.size() * spec.methods.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ApproxValidity validity = approx_validity(envs[i], rule);
    for (Method m : spec.methods) {
      IncrementResult r;
      switch (m) {
        case Method::kExactSum: r = expected_increment_exact(envs[i], rule); break;
        case Method::kNormalApprox: r = expected_increment_approx(envs[i], rule); break;
        case Method::kMonteCarlo: r = mc[i].result; break;
      }
      out.push_back({grid[i], r.value, r.method, r.std_error, validity});
    }
  }
  return out;
}

csv::Table sweep_table(const SweepSpec& spec, const std::vector<CurvePoint>& curve) {
  csv::Table t({"rho", "mu", "n", "sigma", "alpha", "method", "value", "std_error", "validity"});
  for (const CurvePoint& p : curve) {
    t.row()
        .add(p.rho)
        .add(p.rho * spec.sigma)
        .add(spec.n)
        .add(spec.sigma)
        .add(spec.alpha)
        .add(to_string(p.method))
        .add(p.value)
        .add(p.std_error)
        .add(to_string(p.validity));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Pit of losses

std::optional<PitReport> pit_report(std::int64_t n, double sigma, double alpha, double epsilon) {
  constexpr double kLo = -3.0;
  constexpr double kStep = 0.01;
  constexpr int kWindow = 300;     // [-3, 0]
  constexpr int kExtended = 600;   // right-zero search may continue to +3
  constexpr double kTol = 1e-9;

  auto m = [&](double rho) { return exact_at(rho, n, sigma, alpha); };
  auto grid_rho = [&](int i) { return kLo + kStep * static_cast<double>(i); };

  std::vector<double> values(kWindow + 1);
  for (int i = 0; i <= kWindow; ++i) values[static_cast<std::size_t>(i)] = m(grid_rho(i));
  const auto it = std::min_element(values.begin(), values.end());
  if (*it >= 0.0) return std::nullopt;
  const int imin = static_cast<int>(it - values.begin());

  PitReport r;
  r.epsilon = epsilon;
  r.min_rho = golden_section_min(m, grid_rho(std::max(imin - 1, 0)),
                                 grid_rho(std::min(imin + 1, kWindow)), kTol);
  r.min_value = m(r.min_rho);
  if (values[static_cast<std::size_t>(imin)] < r.min_value) {
    r.min_rho = grid_rho(imin);
    r.min_value = values[static_cast<std::size_t>(imin)];
  }

  r.right_zero = kNaN;
  for (int j = imin + 1; j <= kExtended; ++j) {
    const double v = j <= kWindow ? values[static_cast<std::size_t>(j)] : m(grid_rho(j));
    if (v >= 0.0) {
      r.right_zero = bisect(m, grid_rho(j - 1), grid_rho(j), kTol);
      break;
    }
  }

  const double bar = epsilon * sigma;
  auto excess = [&](double rho) { return std::abs(m(rho)) - bar; };
  r.left_epsilon_bound = kNaN;
  if (std::abs(r.min_value) <= bar) {
    r.left_epsilon_bound = r.min_rho;
  } else {
    for (int j = imin - 1; j >= 0; --j) {
      if (std::abs(values[static_cast<std::size_t>(j)]) <= bar) {
        r.left_epsilon_bound = bisect(excess, grid_rho(j), std::min(grid_rho(j + 1), r.min_rho), kTol);
        if (excess(r.left_epsilon_bound) > 0.0) r.left_epsilon_bound = grid_rho(j);
        break;
      }
    }
  }
  return r;
}

csv::Table pit_table(std::int64_t n, double sigma, double alpha, const std::optional<PitReport>& r) {
  csv::Table t({"n", "sigma", "alpha", "has_pit", "right_zero", "min_rho", "min_value",
                "left_epsilon_bound", "epsilon"});
  auto row = t.row();
  row.add(n).add(sigma).add(alpha).add(r.has_value());
  if (r) {
    row.add(r->right_zero).add(r->min_rho).add(r->min_value).add(r->left_epsilon_bound).add(r->epsilon);
  } else {
    row.add("").add("").add("").add("").add("");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Optimal thresholds

std::vector<SplinePoint> optimal_spline(std::int64_t n, double sigma, const RhoRange& range) {
  std::vector<SplinePoint> out;
  for (double rho : uniform_grid(range)) {
    const ThresholdEstimate e = optimal_threshold_bruteforce(Environment::from_rho(rho, sigma), n);
    out.push_back({rho, e.bruteforce_class, e.alpha_bruteforce, e.bruteforce_value});
  }
  return out;
}

csv::Table spline_table(std::int64_t n, double sigma, const std::vector<SplinePoint>& spline) {
  csv::Table t({"rho", "mu", "n", "sigma", "best_class", "best_alpha", "class_center", "best_value"});
  const auto nd = static_cast<double>(n);
  for (const SplinePoint& p : spline) {
    t.row()
        .add(p.rho)
        .add(p.rho * sigma)
        .add(n)
        .add(sigma)
        .add(p.best_class)
        .add(p.best_alpha)
        .add((static_cast<double>(p.best_class) + 0.5) / nd)
        .add(p.best_value);
  }
  return t;
}

LadderTable ladder_table(std::int64_t n, const RhoRange& range) {
  LadderTable t;
  for (double rho : uniform_grid(range)) {
    // The optimum depends on rho only, so sigma = 1 loses nothing.
    const ThresholdEstimate e = optimal_threshold_bruteforce(Environment::from_rho(rho, 1.0), n);
    t.rows.push_back({rho, e.alpha_hat, e.alpha_ladder, e.alpha_bruteforce, e.ladder_class,
                      e.bruteforce_class});
    const std::int64_t gap = std::abs(e.ladder_class - e.bruteforce_class);
    if (gap != 0) ++t.disagreements;
    t.max_class_gap = std::max(t.max_class_gap, gap);
  }
  const auto total = static_cast<double>(t.rows.size());
  t.agreement_rate = (total - static_cast<double>(t.disagreements)) / total;
  return t;
}

csv::Table ladder_csv(std::int64_t n, const LadderTable& t) {
  csv::Table out({"rho", "n", "alpha_hat", "alpha_ladder", "alpha_bruteforce", "ladder_class",
                  "bruteforce_class", "agree"});
  for (const LadderRow& r : t.rows) {
    out.row()
        .add(r.rho)
        .add(n)
        .add(r.alpha_hat)
        .add(r.alpha_ladder)
        .add(r.alpha_bruteforce)
        .add(r.ladder_class)
        .add(r.bruteforce_class)
        .add(r.ladder_class == r.bruteforce_class);
  }
  return out;
}

std::vector<SensitivityRow> sensitivity_table(const RhoRange& range) {
  const double centre = -threshold_sensitivity(0.0);
  const double scale = centre / std_normal_pdf(0.0);
  std::vector<SensitivityRow> rows;
  for (double rho : uniform_grid(range)) {
    rows.push_back({rho, optimal_threshold_estimate(rho), -threshold_sensitivity(rho),
                    scale * std_normal_pdf(rho)});
  }
  return rows;
}

csv::Table sensitivity_csv(const std::vector<SensitivityRow>& rows) {
  // The last column is phi(rho) * (-d alpha_hat/d rho at 0) / phi(0).
  csv::Table t({"rho", "alpha_hat", "minus_derivative", "normal_density_matched_at_0"});
  for (const SensitivityRow& r : rows) {
    t.row().add(r.rho).add(r.alpha_hat).add(r.minus_derivative).add(r.matched_normal_density);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Verification suite

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerifyReport::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerifyReport::to_key_value() const {
  std::ostringstream os;
  for (const Check& c : checks) {
    os << "check." << c.name << '=' << (c.passed ? "pass" : "fail") << '\n';
    os << "check." << c.name << ".metric=" << csv::format_real(c.metric) << '\n';
    if (!c.detail.empty()) os << "check." << c.name << ".detail=" << c.detail << '\n';
  }
  os << "overall=" << (all_passed() ? "pass" : "fail") << '\n';
  return os.str();
}

namespace {

Check check_cdf_symmetry() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -8.0 + 16.0 * i / 999.0;
    worst = std::max(worst, std::abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0));
  }
  return {"cdf_symmetry", worst <= 1e-12, worst, "max |Phi(x)+Phi(-x)-1| on [-8,8]"};
}

Check check_pdf_derivative() {
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -5.0 + 10.0 * i / 1000.0;
    const double fd = (std_normal_cdf(x + h) - std_normal_cdf(x - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - std_normal_pdf(x)));
  }
  return {"pdf_is_cdf_derivative", worst <= 1e-6, worst, "central difference, h=1e-5, [-5,5]"};
}

Check check_threshold_anchors() {
  const double a0 = optimal_threshold_estimate(0.0);
  const double a05 = optimal_threshold_estimate(-0.5);
  const double a1 = optimal_threshold_estimate(-1.0);
  const double worst = std::max({std::abs(a05 - 0.61), std::abs(a1 - 0.71)});
  const bool ok = a0 == 0.5 && worst <= 0.005;
  std::ostringstream d;
  d << "alpha_hat(0)=" << csv::format_real(a0) << " alpha_hat(-0.5)=" << csv::format_real(a05)
    << " alpha_hat(-1)=" << csv::format_real(a1);
  return {"threshold_anchors", ok, worst, d.str()};
}

Check check_sensitivity_constant() {
  const double closed = 0.5 * (std::sqrt(2.0 / std::numbers::pi) - std::sqrt(std::numbers::pi / 2.0));
  const double s0 = threshold_sensitivity(0.0);
  constexpr double h = 1e-4;
  const double fd = (optimal_threshold_estimate(h) - optimal_threshold_estimate(-h)) / (2.0 * h);
  const double e_closed = std::abs(s0 - closed);
  const double e_round = std::abs(s0 + 0.2277);
  const double e_fd = std::abs(fd - s0);
  const bool ok = e_closed <= 1e-10 && e_round <= 1e-4 && e_fd <= 1e-6;
  return {"sensitivity_constant", ok, std::max(e_closed, e_fd),
          "closed form 1e-10, -0.2277 within 1e-4, finite difference 1e-6"};
}

Check check_sensitivity_shape() {
  double worst_even = 0.0;
  double worst_fd = 0.0;
  bool negative = true;
  for (int i = 0; i <= 600; ++i) {
    const double rho = -6.0 + 12.0 * i / 600.0;
    const double s = threshold_sensitivity(rho);
    negative = negative && s < 0.0;
    worst_even = std::max(worst_even, std::abs(s - threshold_sensitivity(-rho)));
    if (std::abs(rho) <= 3.0) {
      constexpr double h = 1e-4;
      const double fd =
          (optimal_threshold_estimate(rho + h) - optimal_threshold_estimate(rho - h)) / (2.0 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - s));
    }
  }
  return {"sensitivity_shape", negative && worst_even <= 1e-12 && worst_fd <= 1e-6, worst_fd,
          "negative and even on [-6,6], finite difference within 1e-6 on [-3,3]"};
}

Check check_foc_identity() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double rho = -3.0 + 6.0 * i / 99.0;
    worst = std::max(worst, std::abs(foc_residual(optimal_threshold_estimate(rho), rho)));
  }
  return {"foc_identity", worst <= 1e-12, worst, "|residual| at alpha_hat, 100 points in [-3,3]"};
}

// The smoothed approximation must be stationary in alpha at alpha_hat. Its
// alpha-derivative is normalized by sigma * sqrt(n) * phi(0), the slope scale.
Check check_foc_stationarity() {
  constexpr std::int64_t n = 21;
  constexpr double sigma = 10.0;
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i <= 8; ++i) {
    const double rho = -1.0 + 0.25 * i;
    const Environment env = Environment::from_rho(rho, sigma);
    const double a = optimal_threshold_estimate(rho);
    const double slope = (smoothed_approx_increment(env, n, a + h) -
                          smoothed_approx_increment(env, n, a - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(slope) / (sigma * std::sqrt(double(n)) * std_normal_pdf(0.0)));
  }
  return {"foc_stationarity", worst <= 1e-6, worst,
          "normalized d/dalpha of the smoothed approximation at alpha_hat, n=21"};
}

Check check_neutral_law() {
  constexpr double sigma = 10.0;
  double worst_approx = 0.0;
  double worst_exact = 0.0;
  for (std::int64_t n = 3; n <= 101; n += 2) {
    const Environment env(0.0, sigma);
    const VotingRule rule(n, 0.5);
    const double law = neutral_mean_increment(sigma, n);
    worst_approx = std::max(worst_approx, std::abs(expected_increment_approx(env, rule).value - law));
    if (n >= 21) {
      worst_exact = std::max(worst_exact,
                             std::abs(expected_increment_exact(env, rule).value - law) / law);
    }
  }
  std::ostringstream d;
  d << "approx abs err " << csv::format_real(worst_approx) << ", exact rel err (n>=21) "
    << csv::format_real(worst_exact);
  return {"neutral_law", worst_approx <= 1e-12 && worst_exact <= 0.05, worst_exact, d.str()};
}

Check check_max_increment_neutral() {
  double worst = 0.0;
  for (std::int64_t n = 1; n <= 101; n += 2) {
    for (double sigma : {1.0, 10.0}) {
      worst = std::max(worst, std::abs(max_expected_increment(Environment(0.0, sigma), n) -
                                       neutral_mean_increment(sigma, n)));
    }
  }
  return {"max_increment_neutral", worst <= 1e-12, worst, "maximum increment at mu=0 vs sigma/(pi sqrt n)"};
}

Check check_approx_vs_exact() {
  constexpr double sigma = 10.0;
  double worst = 0.0;  // in units of 0.05 sigma / sqrt(n)
  int compared = 0;
  for (std::int64_t n : {21, 31, 51}) {
    for (double alpha : {0.4, 0.5, 0.6}) {
      for (int i = 0; i < 50; ++i) {
        const double rho = -1.5 + 3.0 * i / 49.0;
        const Environment env = Environment::from_rho(rho, sigma);
        const VotingRule rule(n, alpha);
        if (approx_validity(env, rule) == ApproxValidity::kWeak) continue;
        const double diff = std::abs(expected_increment_exact(env, rule).value -
                                     expected_increment_approx(env, rule).value);
        worst = std::max(worst, diff / (0.05 * sigma / std::sqrt(double(n))));
        ++compared;
      }
    }
  }
  return {"approx_vs_exact", worst <= 1.0, worst,
          std::to_string(compared) + " non-weak points, worst |exact-approx| / (0.05 sigma/sqrt n)"};
}

Check check_scaling_law() {
  double worst = 0.0;
  for (auto [base, target] : {std::pair<std::int64_t, std::int64_t>{49, 196}, {36, 144}}) {
    double sup_diff = 0.0;
    double sup_abs = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double rho = -1.5 + 3.0 * i / 49.0;
      const double direct = exact_at(rho, target, 1.0, 0.5);
      sup_diff = std::max(sup_diff, std::abs(rescaled_curve_value(base, target, rho, 1.0, 0.5) - direct));
      sup_abs = std::max(sup_abs, std::abs(direct));
    }
    worst = std::max(worst, sup_diff / sup_abs);
  }
  return {"scaling_law", worst <= 0.05, worst, "sup |rescaled-direct| / sup |direct|"};
}

Check check_argmax_invariance() {
  constexpr std::int64_t n = 21;
  bool ok = true;
  double worst = 0.0;
  for (double rho : {-1.0, -0.4, 0.0, 0.3, 1.2}) {
    const Environment base = Environment::from_rho(rho, 1.0);
    const ThresholdEstimate e1 = optimal_threshold_bruteforce(base, n);
    for (double c : {0.5, 3.0, 10.0}) {
      const Environment scaled = base.scaled(c);
      const ThresholdEstimate e2 = optimal_threshold_bruteforce(scaled, n);
      ok = ok && e1.bruteforce_class == e2.bruteforce_class && e1.ladder_class == e2.ladder_class;
      const double v1 = expected_increment_exact(base, VotingRule(n, 0.5)).value;
      const double v2 = expected_increment_exact(scaled, VotingRule(n, 0.5)).value;
      const double rel = std::abs(v2 - c * v1) / std::max(std::abs(c * v1), 1e-300);
      worst = std::max(worst, rel);
    }
  }
  return {"argmax_invariance", ok && worst <= 1e-12, worst, "classes unchanged, values scale with c"};
}

Check check_pit_boundary() {
  const auto pit = pit_report(21, 1.0, 0.5);
  if (!pit) return {"pit_right_zero", false, kNaN, "no pit found"};
  const double err = std::abs(pit->right_zero + 0.266);
  return {"pit_right_zero", err <= 0.005, pit->right_zero, "n=21, alpha=0.5, target -0.266 +- 0.005"};
}

Check check_pit_depth_peak() {
  std::int64_t best_n = 0;
  double best_depth = 0.0;
  for (std::int64_t n = 3; n <= 31; n += 2) {
    const auto pit = pit_report(n, 1.0, 0.5);
    if (pit && -pit->min_value > best_depth) {
      best_depth = -pit->min_value;
      best_n = n;
    }
  }
  return {"pit_depth_peak", best_n == 7, static_cast<double>(best_n), "argmax over odd n in [3,31] of pit depth"};
}

Check check_even_odd_pit() {
  const auto p19 = pit_report(19, 1.0, 0.5);
  const auto p20 = pit_report(20, 1.0, 0.5);
  const auto p21 = pit_report(21, 1.0, 0.5);
  if (!p19 || !p20 || !p21) return {"even_odd_pit", false, kNaN, "missing pit"};
  const double d20 = -p20->min_value;
  const double neighbours = std::min(-p19->min_value, -p21->min_value);
  return {"even_odd_pit", d20 < neighbours, d20 / neighbours, "depth(20) / min(depth(19), depth(21))"};
}

Check check_spline_positivity() {
  const auto spline = optimal_spline(21, 10.0, {-3.0, 3.0, 121});
  double lowest = std::numeric_limits<double>::infinity();
  for (const SplinePoint& p : spline) lowest = std::min(lowest, p.best_value);
  return {"spline_positivity", lowest > 0.0, lowest, "min best_value over rho in [-3,3], n=21, sigma=10"};
}

Check check_ladder_agreement() {
  const LadderTable t = ladder_table(21, {-0.5, 0.5, 100});
  return {"ladder_agreement", t.agreement_rate >= 0.8 && t.max_class_gap <= 1, t.agreement_rate,
          "max class gap " + std::to_string(t.max_class_gap)};
}

void check_monte_carlo(const VerifyOptions& opt, std::vector<Check>& out) {
  constexpr std::int64_t n = 21;
  constexpr double sigma = 10.0;
  const BudgetSplit split = split_budget(opt.budget);
  int within = 0;
  int cells = 0;
  double worst_z = 0.0;
  double worst_rate_z = 0.0;
  std::ostringstream detail;
  for (double rho : {-0.5, 0.0, 0.5}) {
    for (double alpha : {0.4, 0.5, 0.6}) {
      const Environment env = Environment::from_rho(rho, sigma);
      const VotingRule rule(n, alpha);
      SimulationConfig cfg{.env = env,
                           .rule = rule,
                           .steps = split.steps,
                           .trials = split.trials,
                           .seed = rng::mix64(opt.seed) + static_cast<std::uint64_t>(cells),
                           .threads = opt.threads};
      const SimulationSummary s = run_simulation(cfg);
      const double exact = expected_increment_exact(env, rule).value;
      const double z = std::abs(s.mean_step_increment - exact) / s.std_error;
      worst_z = std::max(worst_z, z);
      if (z <= opt.se_multiplier) ++within;

      double accept = 0.0;
      const EnvironmentMoments m = env.moments();
      for (std::int64_t x = min_yes_votes(rule); x <= n; ++x) accept += binomial_pmf(x, n, m.p);
      const double rate_se =
          std::sqrt(accept * (1.0 - accept) / static_cast<double>(s.proposals));
      worst_rate_z = std::max(worst_rate_z, std::abs(s.acceptance_rate - accept) / rate_se);
      ++cells;
      detail << (cells > 1 ? " " : "") << "z(" << csv::format_real(rho) << ","
             << csv::format_real(alpha) << ")=" << csv::format_real(z);
    }
  }
  const bool ok = within >= 7 && worst_z <= opt.se_multiplier + 1.0;
  out.push_back({"mc_oracle", ok, worst_z,
                 std::to_string(within) + "/9 within " + csv::format_real(opt.se_multiplier) +
                     " SE; " + detail.str()});
  out.push_back({"mc_acceptance_rate", worst_rate_z <= opt.se_multiplier + 1.0, worst_rate_z,
                 "worst |rate - binomial tail| in binomial SE"});
}

}  // namespace

VerifyReport verify(const VerifyOptions& options) {
  if (options.budget < 100'000) throw DomainError("verify: budget must be at least 1e5 proposals");
  std::optional<testing::ScopedCdfDistortion> fault;
  if (options.cdf_distortion) fault.emplace(*options.cdf_distortion);

  VerifyReport r;
  r.checks.push_back(check_cdf_symmetry());
  r.checks.push_back(check_pdf_derivative());
  r.checks.push_back(check_threshold_anchors());
  r.checks.push_back(check_sensitivity_constant());
  r.checks.push_back(check_sensitivity_shape());
  r.checks.push_back(check_foc_identity());
  r.checks.push_back(check_foc_stationarity());
  r.checks.push_back(check_neutral_law());
  r.checks.push_back(check_max_increment_neutral());
  r.checks.push_back(check_approx_vs_exact());
  r.checks.push_back(check_scaling_law());
  r.checks.push_back(check_argmax_invariance());
  r.checks.push_back(check_pit_boundary());
  r.checks.push_back(check_pit_depth_peak());
  r.checks.push_back(check_even_odd_pit());
  r.checks.push_back(check_spline_positivity());
  r.checks.push_back(check_ladder_agreement());
  check_monte_carlo(options, r.checks);
  return r;
}

}  // namespace vise::experiments
