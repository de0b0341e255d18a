// vise: command-line front end for the voting-in-stochastic-environment
// engine. Every subcommand writes a CSV table (verify writes a key=value
// report) to --out or stdout.
//
// Usage:
//   vise sweep --n 21 --sigma 10 --alpha 0.5 --method all --out curve.csv
//   vise pit --n 21 --sigma 1
//   vise spline --rho-min -3 --rho-max 3 --points 121
//   vise ladder --n 21 --rho-min -0.5 --rho-max 0.5 --points 100
//   vise sensitivity --rho-min -6 --rho-max 6
//   vise simulate --rho -0.5 --proposals 1000000 --seed 7 --threads 4
//   vise verify --proposals 1000000
//
// Flags may also come from a flat key=value file given with --config
// (e.g. "n = 31"); flags on the command line win.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vise/analytic.hpp"
#include "vise/experiments.hpp"
#include "vise/simulator.hpp"

namespace {

using vise::Method;
namespace ex = vise::experiments;

struct Options {
  std::int64_t n = 21;
  double sigma = 10.0;
  double alpha = 0.5;
  double rho_min = -2.0;
  double rho_max = 2.0;
  std::int64_t points = 81;
  std::optional<double> rho;
  std::uint64_t seed = 20160119;
  std::uint64_t proposals = 100'000;
  std::string out;
  std::string method = "exact";
  unsigned threads = 0;
  double epsilon = 1e-3;
  std::uint64_t trials = 100;
  double initial_capital = 0.0;
  double ruin_level = 0.0;
  double se_multiplier = 3.0;
  std::optional<double> corrupt_cdf;
};

ex::RhoRange rho_range(const Options& o) { return {o.rho_min, o.rho_max, o.points}; }

std::vector<double> rho_points(const Options& o) {
  if (o.rho) return {*o.rho};
  return ex::uniform_grid(rho_range(o));
}

std::vector<Method> parse_methods(const std::string& m) {
  if (m == "exact") return {Method::kExactSum};
  if (m == "approx") return {Method::kNormalApprox};
  if (m == "mc") return {Method::kMonteCarlo};
  return {Method::kExactSum, Method::kNormalApprox, Method::kMonteCarlo};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_sweep(const Options& o) {
  ex::SweepSpec spec{.n = o.n,
                     .sigma = o.sigma,
                     .alpha = o.alpha,
                     .range = rho_range(o),
                     .methods = parse_methods(o.method),
                     .proposals = o.proposals,
                     .seed = o.seed,
                     .threads = o.threads};
  Output out(o.out);
  ex::sweep_table(spec, ex::sweep_increment(spec)).write(out.stream());
  return 0;
}

int run_pit(const Options& o) {
  Output out(o.out);
  ex::pit_table(o.n, o.sigma, o.alpha, ex::pit_report(o.n, o.sigma, o.alpha, o.epsilon))
      .write(out.stream());
  return 0;
}

int run_spline(const Options& o) {
  Output out(o.out);
  ex::spline_table(o.n, o.sigma, ex::optimal_spline(o.n, o.sigma, rho_range(o))).write(out.stream());
  return 0;
}

int run_ladder(const Options& o) {
  const ex::LadderTable t = ex::ladder_table(o.n, rho_range(o));
  Output out(o.out);
  ex::ladder_csv(o.n, t).write(out.stream());
  std::cerr << "agreement_rate=" << vise::csv::format_real(t.agreement_rate)
            << " disagreements=" << t.disagreements << " max_class_gap=" << t.max_class_gap << '\n';
  return 0;
}

int run_sensitivity(const Options& o) {
  Output out(o.out);
  ex::sensitivity_csv(ex::sensitivity_table(rho_range(o))).write(out.stream());
  return 0;
}

int run_simulate(const Options& o) {
  const vise::VotingRule rule(o.n, o.alpha);
  if (o.trials < 1 || o.proposals < o.trials) {
    throw vise::DomainError("simulate: need 1 <= trials <= proposals");
  }
  vise::csv::Table t({"rho", "mu", "n", "sigma", "alpha", "steps", "trials", "seed",
                      "mean_step_increment", "std_error", "acceptance_rate", "mean_final_capital",
                      "ruined_count_mean", "gini_final", "exact_value"});
  const std::vector<double> grid = rho_points(o);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const vise::Environment env = vise::Environment::from_rho(grid[i], o.sigma);
    const vise::SimulationConfig cfg{.env = env,
                                     .rule = rule,
                                     .steps = o.proposals / o.trials,
                                     .trials = o.trials,
                                     .seed = vise::rng::mix64(o.seed + i),
                                     .initial_capital = o.initial_capital,
                                     .ruin_level = o.ruin_level,
                                     .threads = o.threads};
    const vise::SimulationSummary s = vise::run_simulation(cfg);
    t.row()
        .add(grid[i])
        .add(env.mu())
        .add(o.n)
        .add(o.sigma)
        .add(o.alpha)
        .add(static_cast<std::int64_t>(cfg.steps))
        .add(static_cast<std::int64_t>(cfg.trials))
        .add(std::to_string(cfg.seed))
        .add(s.mean_step_increment)
        .add(s.std_error)
        .add(s.acceptance_rate)
        .add(s.mean_final_capital)
        .add(s.ruined_count_mean)
        .add(s.gini_final)
        .add(vise::expected_increment_exact(env, rule).value);
  }
  Output out(o.out);
  t.write(out.stream());
  return 0;
}

int run_verify(const Options& o, bool budget_given) {
  ex::VerifyOptions v{.seed = o.seed,
                      .budget = budget_given ? o.proposals : 1'000'000,
                      .se_multiplier = o.se_multiplier,
                      .threads = o.threads,
                      .cdf_distortion = o.corrupt_cdf};
  const ex::VerifyReport report = ex::verify(v);
  Output out(o.out);
  out.stream() << report.to_key_value();
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected capital increments, optimal majority thresholds and Monte Carlo "
               "verification for a society of egoist voters"};
  app.set_config("--config", "", "Flat key=value file with default flag values");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--n", o.n, "Number of agents")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40))->capture_default_str();
  app.add_option("--sigma", o.sigma, "Standard deviation of proposed increments")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--alpha", o.alpha, "Strict relative acceptance threshold")->capture_default_str();
  app.add_option("--rho-min", o.rho_min, "Lower end of the rho grid")->capture_default_str();
  app.add_option("--rho-max", o.rho_max, "Upper end of the rho grid")->capture_default_str();
  app.add_option("--points", o.points, "Number of grid points (>= 2)")->capture_default_str();
  app.add_option("--rho", o.rho, "Single rho value (simulate only; overrides the grid)");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  auto* proposals = app.add_option("--proposals", o.proposals, "Monte Carlo proposals per point")
                        ->capture_default_str();
  app.add_option("--out", o.out, "Output path (default: stdout)");
  app.add_option("--method", o.method, "Increment method for sweep")
      ->check(CLI::IsMember({"exact", "approx", "mc", "all"}))
      ->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads, 0 = all cores (results do not depend on it)")
      ->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "Pit left-boundary level, in units of sigma")
      ->capture_default_str();
  app.add_option("--trials", o.trials, "Independent trials for simulate")->capture_default_str();
  app.add_option("--initial-capital", o.initial_capital, "Initial capital of every agent")
      ->capture_default_str();
  app.add_option("--ruin-level", o.ruin_level, "Final capital strictly below this counts as ruin")
      ->capture_default_str();
  app.add_option("--se-multiplier", o.se_multiplier, "Monte Carlo tolerance in standard errors")
      ->capture_default_str();
  app.add_option("--corrupt-cdf", o.corrupt_cdf,
                 "Fault injection for verify: evaluate Phi(scale * x) instead of Phi(x)")
      ->group("");

  auto* sweep = app.add_subcommand("sweep", "Expected increment versus rho (exact/approx/mc)");
  auto* pit = app.add_subcommand("pit", "Locate the pit of losses of the exact increment curve");
  auto* spline = app.add_subcommand("spline", "Best essentially different threshold per rho");
  auto* ladder = app.add_subcommand("ladder", "Threshold estimate, ladder and brute-force optimum");
  auto* sensitivity = app.add_subcommand("sensitivity", "Slope of the optimal threshold estimate");
  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo runs of the voting dynamics");
  auto* verify = app.add_subcommand("verify", "Run the oracle suite; exit status 1 on failure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_sweep(o);
    if (*pit) return run_pit(o);
    if (*spline) return run_spline(o);
    if (*ladder) return run_ladder(o);
    if (*sensitivity) return run_sensitivity(o);
    if (*simulate) return run_simulate(o);
    if (*verify) return run_verify(o, proposals->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "vise: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
