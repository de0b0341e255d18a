#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "vise/csv.hpp"
#include "vise/experiments.hpp"

using namespace vise;
using namespace vise::experiments;

TEST_CASE("csv formatting") {
  CHECK(csv::format_real(0.1) == "0.1");
  CHECK(csv::format_real(1.0 / 3.0) == "0.3333333333");
  CHECK(csv::format_real(-0.2660971937468667) == "-0.2660971937");
  CHECK(csv::format_real(-0.0) == "0");
  CHECK(csv::format_real(1e-20) == "1e-20");

  csv::Table t({"a", "b", "c"});
  t.row().add(1.5).add(std::int64_t{2}).add("x");
  t.row().add(std::optional<double>{}).add(true).add(-1e6);
  CHECK(t.str() == "a,b,c\n1.5,2,x\n,1,-1000000\n");

  csv::Table bad({"a", "b"});
  bad.row().add(1.0);
  CHECK_THROWS_AS(bad.str(), std::logic_error);
}

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid({-1.0, 1.0, 5});
  CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK_THROWS_AS(uniform_grid({0.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(uniform_grid({1.0, 0.0, 3}), DomainError);
}

TEST_CASE("sweep_increment") {
  SUBCASE("exact curve has the pit in (-0.9, -0.266)") {
    SweepSpec spec{.n = 21, .sigma = 10.0, .alpha = 0.5, .range = {-2.0, 2.0, 401}};
    const auto curve = sweep_increment(spec);
    REQUIRE(curve.size() == 401);
    for (const CurvePoint& p : curve) {
      if (p.rho > -0.9 + 1e-9 && p.rho < -0.27) CHECK(p.value < 0.0);
      if (p.rho > -0.26) CHECK(p.value > 0.0);
    }
  }
  SUBCASE("reject-all sweep is identically zero") {
    SweepSpec spec{.alpha = 1.0, .range = {-2.0, 2.0, 21}};
    for (const CurvePoint& p : sweep_increment(spec)) CHECK(p.value == 0.0);
  }
  SUBCASE("methods interleave per rho and agree where valid") {
    SweepSpec spec{.n = 31,
                   .sigma = 10.0,
                   .alpha = 0.6,
                   .range = {-1.0, 1.0, 11},
                   .methods = {Method::kExactSum, Method::kNormalApprox, Method::kMonteCarlo},
                   .proposals = 20'000,
                   .seed = 5};
    const auto curve = sweep_increment(spec);
    REQUIRE(curve.size() == 33);
    for (std::size_t i = 0; i < curve.size(); i += 3) {
      CHECK(curve[i].method == Method::kExactSum);
      CHECK(curve[i + 1].method == Method::kNormalApprox);
      CHECK(curve[i + 2].method == Method::kMonteCarlo);
      CHECK(curve[i].rho == curve[i + 2].rho);
      CHECK(curve[i + 2].std_error.has_value());
      CHECK_FALSE(curve[i].std_error.has_value());
      if (curve[i].validity != ApproxValidity::kWeak) {
        CHECK(std::abs(curve[i].value - curve[i + 1].value) < 0.05 * 10.0 / std::sqrt(31.0));
      }
    }
    const csv::Table t = sweep_table(spec, curve);
    CHECK(t.header().front() == "rho");
    CHECK(t.size() == 33);
    CHECK(t.at(2)[5] == "mc");
  }
}

TEST_CASE("pit_report") {
  SUBCASE("n = 21 boundaries") {
    const auto pit = pit_report(21, 1.0, 0.5);
    REQUIRE(pit.has_value());
    CHECK(std::abs(pit->right_zero + 0.266) <= 0.005);
    const double at_zero =
        expected_increment_exact(Environment::from_rho(pit->right_zero, 1.0), VotingRule(21, 0.5)).value;
    CHECK(std::abs(at_zero) <= 1e-6);
    CHECK(pit->min_rho > -0.9);
    CHECK(pit->min_rho < -0.266);
    CHECK(pit->min_value < 0.0);
    CHECK(pit->left_epsilon_bound <= pit->min_rho);
    CHECK(pit->min_rho <= pit->right_zero);
    const double at_left = expected_increment_exact(
        Environment::from_rho(pit->left_epsilon_bound, 1.0), VotingRule(21, 0.5)).value;
    CHECK(std::abs(at_left) <= 1e-3 * (1.0 + 1e-6));
  }
  SUBCASE("sigma scales the depth only") {
    const auto a = pit_report(21, 1.0, 0.5);
    const auto b = pit_report(21, 10.0, 0.5);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(b->right_zero == doctest::Approx(a->right_zero).epsilon(1e-6));
    CHECK(b->min_value == doctest::Approx(10.0 * a->min_value).epsilon(1e-6));
    CHECK(b->left_epsilon_bound == doctest::Approx(a->left_epsilon_bound).epsilon(1e-6));
  }
  SUBCASE("depth peaks at n = 7 among odd n") {
    std::int64_t best_n = 0;
    double best = 0.0;
    for (std::int64_t n = 3; n <= 31; n += 2) {
      const auto pit = pit_report(n, 1.0, 0.5);
      REQUIRE(pit);
      if (-pit->min_value > best) {
        best = -pit->min_value;
        best_n = n;
      }
    }
    CHECK(best_n == 7);
  }
  SUBCASE("even n is shallower than its odd neighbours") {
    const double d19 = -pit_report(19, 1.0, 0.5)->min_value;
    const double d20 = -pit_report(20, 1.0, 0.5)->min_value;
    const double d21 = -pit_report(21, 1.0, 0.5)->min_value;
    CHECK(d20 < std::min(d19, d21));
  }
  SUBCASE("accept-all has no pit in the favourable half but the whole window is negative") {
    // mu < 0 everywhere in [-3, 0): the minimum sits at the left edge.
    const auto pit = pit_report(21, 1.0, -1.0 / 21.0);
    REQUIRE(pit);
    CHECK(pit->min_rho == doctest::Approx(-3.0));
    CHECK(pit->right_zero == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  }
  SUBCASE("reject-all never loses") {
    CHECK_FALSE(pit_report(21, 1.0, 1.0).has_value());
    const csv::Table t = pit_table(21, 1.0, 1.0, std::nullopt);
    CHECK(t.at(0)[3] == "0");
  }
}

TEST_CASE("optimal_spline") {
  const auto spline = optimal_spline(21, 10.0, {-3.0, 3.0, 61});
  for (const SplinePoint& p : spline) {
    CHECK(p.best_value > 0.0);
    // Dominates every single-threshold curve.
    for (std::int64_t k = -1; k <= 21; ++k) {
      const double v = expected_increment_exact(Environment::from_rho(p.rho, 10.0),
                                                VotingRule::from_class(21, k)).value;
      CHECK(v <= p.best_value);
    }
  }
  const auto at = [&](double rho) {
    for (const SplinePoint& p : spline) {
      if (std::abs(p.rho - rho) < 1e-9) return p;
    }
    FAIL("grid point missing");
    return SplinePoint{};
  };
  CHECK(at(0.0).best_class == 10);
  CHECK(at(0.0).best_alpha <= 0.5);
  CHECK((at(0.0).best_class + 1) / 21.0 > 0.5);
  CHECK(at(0.8).best_alpha < 0.5);
}

TEST_CASE("ladder_table") {
  const LadderTable t = ladder_table(21, {-0.5, 0.5, 100});
  CHECK(t.rows.size() == 100);
  CHECK(t.agreement_rate >= 0.8);
  CHECK(t.max_class_gap <= 1);
  std::set<double> steps;
  for (const LadderRow& r : t.rows) {
    CHECK(r.alpha_ladder == doctest::Approx((r.ladder_class + 0.5) / 21.0));
    if (r.ladder_class == r.bruteforce_class) {
      CHECK(r.alpha_bruteforce >= r.alpha_ladder - 0.5 / 21.0 - 1e-15);
      CHECK(r.alpha_bruteforce < r.alpha_ladder + 0.5 / 21.0);
    }
    steps.insert(r.alpha_ladder);
  }
  // 0.5 +- 0.5 * 0.2277 spans about five classes of width 1/21.
  CHECK(steps.size() >= 4);
  const auto near = std::find_if(t.rows.begin(), t.rows.end(),
                                 [](const LadderRow& r) { return std::abs(r.rho + 0.5) < 1e-9; });
  REQUIRE(near != t.rows.end());
  CHECK(std::abs(near->alpha_hat - 0.61) <= 0.005);
  CHECK(ladder_csv(21, t).size() == 100);
}

TEST_CASE("sensitivity_table") {
  const auto rows = sensitivity_table({-3.0, 3.0, 61});
  REQUIRE(rows.size() == 61);
  const SensitivityRow& mid = rows[30];
  CHECK(mid.rho == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(mid.minus_derivative - 0.22772) <= 1e-5);
  CHECK(mid.matched_normal_density == doctest::Approx(mid.minus_derivative));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].minus_derivative ==
          doctest::Approx(rows[rows.size() - 1 - i].minus_derivative).epsilon(1e-12));
  }
  CHECK(rows.front().minus_derivative > rows.front().matched_normal_density);
  CHECK(rows.back().minus_derivative > rows.back().matched_normal_density);
  CHECK(sensitivity_csv(rows).header().back() == "normal_density_matched_at_0");
}

TEST_CASE("verify") {
  SUBCASE("relaxed budget passes") {
    const VerifyReport r = verify({.seed = 17, .budget = 100'000, .se_multiplier = 4.0});
    for (const Check& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    CHECK(r.all_passed());
    const std::string kv = r.to_key_value();
    CHECK(kv.find("check.mc_oracle=pass\n") != std::string::npos);
    CHECK(kv.substr(kv.size() - 13) == "overall=pass\n");
  }
  SUBCASE("a corrupted cdf is caught") {
    const VerifyReport r = verify({.seed = 17, .budget = 100'000, .cdf_distortion = 1.1});
    CHECK_FALSE(r.all_passed());
    CHECK_FALSE(r.find("foc_stationarity")->passed);
    CHECK_FALSE(r.find("mc_oracle")->passed);
    CHECK(std_normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
  }
  CHECK_THROWS_AS(verify({.budget = 99'999}), DomainError);
}
