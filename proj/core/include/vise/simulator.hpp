#pragma once

// Seeded Monte Carlo model of the voting dynamics: the environment proposes
// a vector of capital increments, every egoist votes for it iff its own
// increment is positive, and the proposal is implemented iff the share of
// supporters strictly exceeds alpha. Independent of the closed forms in
// analytic.hpp, which it is used to verify.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vise/analytic.hpp"
#include "vise/core_math.hpp"
#include "vise/rng.hpp"

namespace vise {

/// Dimension mismatch between a proposal and the society it is put to.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Proposal {
  std::vector<double> increments;
};

struct SocietyState {
  std::vector<double> capitals;
  std::uint64_t step_index = 0;

  static SocietyState uniform(std::int64_t n, double initial_capital);
};

struct StepOutcome {
  SocietyState state;
  bool accepted = false;
};

/// n i.i.d. N(mu, sigma) increments drawn from the sampler.
Proposal generate_proposal(const Environment& env, std::int64_t n, rng::NormalSampler& normals);

/// Fills out with i.i.d. N(mu, sigma) increments.
void fill_proposal(const Environment& env, rng::NormalSampler& normals, std::span<double> out);

/// Number of strictly positive increments; a zero increment is a "no".
std::int64_t tally_votes(std::span<const double> increments) noexcept;
inline std::int64_t tally_votes(const Proposal& p) noexcept { return tally_votes(p.increments); }

/// Puts the proposal to a vote and implements it if it passes. The state is
/// modified only on acceptance, apart from step_index. Returns acceptance.
bool apply_step_in_place(SocietyState& state, std::span<const double> increments,
                         const VotingRule& rule);

StepOutcome apply_step(SocietyState state, const Proposal& p, const VotingRule& rule);

struct SimulationConfig {
  Environment env{0.0, 1.0};
  VotingRule rule{21, 0.5};
  std::uint64_t steps = 1000;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  double initial_capital = 0.0;
  double ruin_level = 0.0;   // capital strictly below this at the end counts as ruined
  unsigned threads = 0;      // 0 = hardware concurrency; never affects results
};

struct SimulationSummary {
  double mean_step_increment = 0.0;   // per agent per step, rejected steps count 0
  double std_error = 0.0;
  double acceptance_rate = 0.0;
  double mean_final_capital = 0.0;
  double ruined_count_mean = 0.0;
  std::optional<double> gini_final;    // descriptive only
  std::uint64_t proposals = 0;
};

/// Runs trials x steps proposals. Trial t draws from CounterStream(seed, t)
/// and trial results are reduced in index order, so the summary is the
/// same for any thread count. std_error comes from the between-trial spread
/// (from the per-step spread when there is a single trial).
SimulationSummary run_simulation(const SimulationConfig& config);

/// Gini coefficient of the values after shifting them to be nonnegative;
/// empty when all shifted values are zero.
std::optional<double> gini_coefficient(std::vector<double> values);

struct BudgetSplit {
  std::uint64_t steps;
  std::uint64_t trials;
};

/// Splits a proposal budget into steps x trials using the largest trial
/// count <= 100 that divides it exactly.
BudgetSplit split_budget(std::uint64_t total_proposals);

struct McCurvePoint {
  double rho = 0.0;
  IncrementResult result;
};

/// One Monte Carlo estimate per environment, each from run_simulation with
/// steps * trials == total_proposals. Grid point i uses seed mix64(seed + i).
std::vector<McCurvePoint> estimate_increment_curve(std::span<const Environment> env_grid,
                                                   const VotingRule& rule,
                                                   std::uint64_t total_proposals,
                                                   std::uint64_t seed, unsigned threads = 0);

}  // namespace vise
