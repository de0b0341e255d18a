#include "vise/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace vise {

namespace {

struct TrialResult {
  double increment_sum = 0.0;      // over steps and agents
  double step_mean_sq_sum = 0.0;   // sum over steps of (per-agent step increment)^2
  std::uint64_t accepted = 0;
  double mean_final_capital = 0.0;
  std::uint64_t ruined = 0;
  std::optional<double> gini;
};

TrialResult run_trial(const SimulationConfig& cfg, std::uint64_t trial) {
  const std::int64_t n = cfg.rule.n();
  const auto nd = static_cast<double>(n);
  rng::NormalSampler normals(rng::CounterStream(cfg.seed, trial));
  SocietyState state = SocietyState::uniform(n, cfg.initial_capital);
  std::vector<double> increments(static_cast<std::size_t>(n));

  TrialResult r;
  for (std::uint64_t s = 0; s < cfg.steps; ++s) {
    fill_proposal(cfg.env, normals, increments);
    if (apply_step_in_place(state, increments, cfg.rule)) {
      ++r.accepted;
      double total = 0.0;
      for (double d : increments) total += d;
      r.increment_sum += total;
      const double step_mean = total / nd;
      r.step_mean_sq_sum += step_mean * step_mean;
    }
  }

  double capital_sum = 0.0;
  for (double c : state.capitals) {
    capital_sum += c;
    if (c < cfg.ruin_level) ++r.ruined;
  }
  r.mean_final_capital = capital_sum / nd;
  r.gini = gini_coefficient(std::move(state.capitals));
  return r;
}

unsigned resolve_threads(unsigned requested, std::uint64_t work_items) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(1, work_items)));
}

}  // namespace

SocietyState SocietyState::uniform(std::int64_t n, double initial_capital) {
  if (n < 1) throw DomainError("SocietyState: n must be positive");
  return {std::vector<double>(static_cast<std::size_t>(n), initial_capital), 0};
}

void fill_proposal(const Environment& env, rng::NormalSampler& normals, std::span<double> out) {
  for (double& d : out) d = env.mu() + env.sigma() * normals();
}

Proposal generate_proposal(const Environment& env, std::int64_t n, rng::NormalSampler& normals) {
  if (n < 1) throw DomainError("generate_proposal: n must be positive");
  Proposal p{std::vector<double>(static_cast<std::size_t>(n))};
  fill_proposal(env, normals, p.increments);
  return p;
}

std::int64_t tally_votes(std::span<const double> increments) noexcept {
  return static_cast<std::int64_t>(
      std::count_if(increments.begin(), increments.end(), [](double d) { return d > 0.0; }));
}

bool apply_step_in_place(SocietyState& state, std::span<const double> increments,
                         const VotingRule& rule) {
  if (increments.size() != state.capitals.size() ||
      static_cast<std::int64_t>(increments.size()) != rule.n()) {
    throw DimensionError("apply_step: proposal has " + std::to_string(increments.size()) +
                         " increments for a society of " +
                         std::to_string(state.capitals.size()) + " (rule n=" +
                         std::to_string(rule.n()) + ")");
  }
  ++state.step_index;
  if (tally_votes(increments) < min_yes_votes(rule)) return false;
  for (std::size_t i = 0; i < increments.size(); ++i) state.capitals[i] += increments[i];
  return true;
}

StepOutcome apply_step(SocietyState state, const Proposal& p, const VotingRule& rule) {
  const bool accepted = apply_step_in_place(state, p.increments, rule);
  return {std::move(state), accepted};
}

std::optional<double> gini_coefficient(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  const double lowest = *std::min_element(values.begin(), values.end());
  const double shift = std::min(lowest, 0.0);
  for (double& v : values) v -= shift;
  std::sort(values.begin(), values.end());
  double total = 0.0;
  double ranked = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += values[i];
    ranked += static_cast<double>(i + 1) * values[i];
  }
  if (!(total > 0.0)) return std::nullopt;
  const auto m = static_cast<double>(values.size());
  return 2.0 * ranked / (m * total) - (m + 1.0) / m;
}

SimulationSummary run_simulation(const SimulationConfig& cfg) {
  if (cfg.steps < 1 || cfg.trials < 1) throw DomainError("run_simulation: steps and trials must be >= 1");

  std::vector<TrialResult> results(cfg.trials);
  const unsigned workers = resolve_threads(cfg.threads, cfg.trials);
  if (workers == 1) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) results[t] = run_trial(cfg, t);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1)) {
          results[t] = run_trial(cfg, t);
        }
      });
    }
  }

  const auto nd = static_cast<double>(cfg.rule.n());
  const auto steps = static_cast<double>(cfg.steps);
  const auto trials = static_cast<double>(cfg.trials);

  SimulationSummary out;
  out.proposals = cfg.steps * cfg.trials;
  std::vector<double> trial_means;
  trial_means.reserve(cfg.trials);
  double accepted = 0.0;
  double gini_sum = 0.0;
  std::uint64_t gini_count = 0;
  for (const TrialResult& r : results) {
    trial_means.push_back(r.increment_sum / (nd * steps));
    accepted += static_cast<double>(r.accepted);
    out.mean_final_capital += r.mean_final_capital;
    out.ruined_count_mean += static_cast<double>(r.ruined);
    if (r.gini) {
      gini_sum += *r.gini;
      ++gini_count;
    }
  }
  double grand = 0.0;
  for (double m : trial_means) grand += m;
  grand /= trials;
  out.mean_step_increment = grand;
  out.acceptance_rate = accepted / (steps * trials);
  out.mean_final_capital /= trials;
  out.ruined_count_mean /= trials;
  if (gini_count > 0) out.gini_final = gini_sum / static_cast<double>(gini_count);

  if (cfg.trials >= 2) {
    double ss = 0.0;
    for (double m : trial_means) ss += (m - grand) * (m - grand);
    out.std_error = std::sqrt(ss / (trials - 1.0) / trials);
  } else if (cfg.steps >= 2) {
    const double var = (results[0].step_mean_sq_sum - steps * grand * grand) / (steps - 1.0);
    out.std_error = std::sqrt(std::max(var, 0.0) / steps);
  }
  return out;
}

BudgetSplit split_budget(std::uint64_t total_proposals) {
  if (total_proposals < 1) throw DomainError("split_budget: need at least one proposal");
  std::uint64_t trials = std::min<std::uint64_t>(100, total_proposals);
  while (total_proposals % trials != 0) --trials;
  return {total_proposals / trials, trials};
}

std::vector<McCurvePoint> estimate_increment_curve(std::span<const Environment> env_grid,
                                                   const VotingRule& rule,
                                                   std::uint64_t total_proposals,
                                                   std::uint64_t seed, unsigned threads) {
  if (env_grid.empty()) throw DomainError("estimate_increment_curve: empty grid");
  if (total_proposals < 1) throw DomainError("estimate_increment_curve: need at least one proposal");

  const BudgetSplit split = split_budget(total_proposals);
  std::vector<McCurvePoint> curve;
  curve.reserve(env_grid.size());
  for (std::size_t i = 0; i < env_grid.size(); ++i) {
    SimulationConfig cfg{.env = env_grid[i],
                         .rule = rule,
                         .steps = split.steps,
                         .trials = split.trials,
                         .seed = rng::mix64(seed + i),
                         .threads = threads};
    const SimulationSummary s = run_simulation(cfg);
    curve.push_back({env_grid[i].rho(), {s.mean_step_increment, Method::kMonteCarlo, s.std_error}});
  }
  return curve;
}

}  // namespace vise
