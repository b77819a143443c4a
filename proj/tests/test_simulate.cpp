#include <cmath>

#include "doctest.h"
#include "fairassort/policy.hpp"
#include "fairassort/simulate.hpp"
#include "fairassort/upper_bound.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fairassort;

namespace {

PolicySpec manual_fixed(std::vector<double> targets) {
  PolicySpec spec;
  spec.kind = PolicyKind::FixedTarget;
  spec.targets = std::move(targets);
  for (int i = 0; i < static_cast<int>(spec.targets.size()); ++i)
    if (spec.targets[static_cast<std::size_t>(i)] > 0.0) spec.support.push_back(i);
  return spec;
}

}  // namespace

TEST_CASE("single-period Bernoulli mean") {
  Instance inst({1.0}, {1.0}, 1.0);
  DynamicInstance dyn(inst, 1, {1});
  double q = 0.37;
  auto report = simulate(dyn, manual_fixed({q}), 10000, 7);
  double se = std::sqrt(q * (1.0 - q) / 10000.0);
  CHECK(std::abs(report.mean_sales[0] - q) <= 3.0 * se);
}

TEST_CASE("fixed-target mean sales match the capped binomial mean") {
  Instance inst({4.0, 2.0, 1.0, 3.0}, {1.0, 0.8, 0.6, 1.2}, 0.5);
  DynamicInstance dyn(inst, 50, {10, 40, 8, 25});
  std::vector<double> targets = {0.12, 0.1, 0.06, 0.11};
  auto spec = manual_fixed(targets);
  SimulateOptions options;
  options.replicates = 10000;
  options.seed = 99;
  options.keep_trajectories = true;
  auto report = simulate(dyn, spec, options);

  for (int i = 0; i < 4; ++i) {
    double g = capped_mean_sales(50, targets[static_cast<std::size_t>(i)], dyn.inventory(i));
    // Sample SE of the per-product mean.
    double mean = report.mean_sales[static_cast<std::size_t>(i)];
    double var = 0.0;
    for (const auto& sales : report.replicate_sales) {
      double d = static_cast<double>(sales[static_cast<std::size_t>(i)]) - mean;
      var += d * d;
    }
    var /= static_cast<double>(report.replicates - 1);
    double se = std::sqrt(var / static_cast<double>(report.replicates));
    CHECK(std::abs(mean - g) <= 3.0 * std::max(se, 1e-9));
  }

  SUBCASE("sales never exceed inventory in any replicate") {
    for (const auto& sales : report.replicate_sales) {
      for (int i = 0; i < 4; ++i)
        CHECK(sales[static_cast<std::size_t>(i)] <= dyn.inventory(i));
    }
  }

  SUBCASE("per-product variance matches min(Binomial, c) for the tight product") {
    double p = targets[2];
    long c = dyn.inventory(2);
    // Enumerated truth.
    double mean_true = fatest::capped_mean_enum_oracle(50, p, c);
    long double pmf = std::pow(1.0L - static_cast<long double>(p), 50.0L);
    long double ratio = static_cast<long double>(p) / (1.0L - static_cast<long double>(p));
    long double ex2 = 0.0L;
    for (long k = 0; k <= 50; ++k) {
      long double capped = std::min<long double>(static_cast<long double>(k), static_cast<long double>(c));
      ex2 += capped * capped * pmf;
      pmf *= ratio * static_cast<long double>(50 - k) / static_cast<long double>(k + 1);
    }
    double var_true = static_cast<double>(ex2) - mean_true * mean_true;
    double mean = report.mean_sales[2];
    double var_emp = 0.0;
    for (const auto& sales : report.replicate_sales) {
      double d = static_cast<double>(sales[2]) - mean;
      var_emp += d * d;
    }
    var_emp /= static_cast<double>(report.replicates - 1);
    // Variance of the sample variance ~ 2 var^2 / R for near-normal sums.
    double se_var = var_true * std::sqrt(2.0 / static_cast<double>(report.replicates)) * 2.0;
    CHECK(std::abs(var_emp - var_true) <= 4.0 * se_var);
  }
}

TEST_CASE("both sampling modes agree in distribution") {
  Instance inst({4.0, 2.0, 1.0}, {1.0, 0.8, 0.6}, 0.5);
  DynamicInstance dyn(inst, 30, {10, 12, 9});
  auto spec = manual_fixed({0.15, 0.12, 0.1});
  long R = 20000;
  auto direct = simulate(dyn, spec, R, 5, SampleMode::DirectCategorical);
  auto faithful = simulate(dyn, spec, R, 6, SampleMode::SampleAssortment);
  for (int i = 0; i < 3; ++i) {
    double m1 = direct.mean_sales[static_cast<std::size_t>(i)];
    double m2 = faithful.mean_sales[static_cast<std::size_t>(i)];
    // Pooled SE with per-product sales bounded by c_i: conservative bound
    // sd <= c_i / 2.
    double sd_cap = static_cast<double>(dyn.inventory(i)) / 2.0;
    double pooled = sd_cap * std::sqrt(2.0 / static_cast<double>(R));
    CHECK(std::abs(m1 - m2) <= 4.0 * pooled);
  }
}

TEST_CASE("simulation is deterministic per seed and thread count independent") {
  CounterRng rng = CounterRng::stream(71, 0);
  DynamicInstance dyn = fatest::random_dynamic(rng, 4, 0.5, 40);
  PolicySpec spec = build_policy(dyn, 0.2);

  SimulateOptions a;
  a.replicates = 500;
  a.seed = 42;
  a.threads = 1;
  SimulateOptions b = a;
  b.threads = 4;
  auto ra = simulate(dyn, spec, a);
  auto rb = simulate(dyn, spec, b);
  CHECK(ra.mean_revenue == rb.mean_revenue);
  CHECK(ra.mean_sales == rb.mean_sales);

  auto rc = simulate(dyn, spec, a);
  CHECK(ra.mean_revenue == rc.mean_revenue);
}

TEST_CASE("mean revenue stays below the relaxation bound") {
  CounterRng rng = CounterRng::stream(72, 0);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(4));
    DynamicInstance dyn = fatest::random_dynamic(rng, n, 0.5, 50);
    UpperBoundSolution ub = solve_upper_bound_exact(dyn);
    PolicySpec spec = calibrate_policy(dyn, ub, 1e-3);
    auto report = simulate(dyn, spec, 2000, 17);
    CHECK(report.mean_revenue <= ub.objective + 3.0 * report.se_revenue);
    CHECK(report.normalized_revenue <= 1.0 + 3.0 * report.se_revenue / std::max(1.0, ub.objective));
  }
}

TEST_CASE("capped policy simulates within inventory and equalizes sales") {
  CounterRng rng = CounterRng::stream(73, 0);
  DynamicInstance dyn = fatest::random_dynamic(rng, 4, 1.0, 40);
  PolicySpec spec = build_policy(dyn, 0.1);
  SimulateOptions options;
  options.replicates = 4000;
  options.seed = 3;
  options.keep_trajectories = true;
  auto report = simulate(dyn, spec, options);
  for (const auto& sales : report.replicate_sales) {
    for (int i = 0; i < 4; ++i) {
      CHECK(sales[static_cast<std::size_t>(i)] <= dyn.inventory(i));
      CHECK(sales[static_cast<std::size_t>(i)] <= spec.cap);
    }
  }
  auto audit = audit_balancing(report, 1.0);
  CHECK(audit.pass);
}

TEST_CASE("heuristics respect cumulative balancing and inventory") {
  CounterRng rng = CounterRng::stream(74, 0);
  for (PolicyKind kind : {PolicyKind::Heuristic1, PolicyKind::Heuristic2}) {
    DynamicInstance dyn = fatest::random_dynamic(rng, 4, 0.5, 60);
    UpperBoundSolution ub = solve_upper_bound_exact(dyn);
    if (ub.support.empty()) continue;
    PolicySpec spec = calibrate_policy(dyn, ub, 1e-3);
    spec.kind = kind;
    spec.targets = ub.xs.x;  // heuristics start from the relaxation solution
    spec.support = ub.support;

    SimulateOptions options;
    options.replicates = 300;
    options.seed = 11;
    options.keep_trajectories = true;
    auto report = simulate(dyn, spec, options);
    CHECK(report.balancing_violations == 0);
    for (const auto& sales : report.replicate_sales) {
      for (int i = 0; i < 4; ++i) CHECK(sales[static_cast<std::size_t>(i)] <= dyn.inventory(i));
    }
    auto audit = audit_balancing(report, dyn.base().alpha());
    CHECK(audit.pass);
  }
}

TEST_CASE("audit_balancing behavior") {
  SimulationReport report;
  report.minmax_ratio = 0.48;
  report.minmax_ratio_se = 0.01;
  CHECK(audit_balancing(report, 0.5).pass);        // 0.48 >= 0.5 - 0.03
  CHECK(!audit_balancing(report, 0.5, 0.001).pass);
  CHECK(audit_balancing(report, 0.25).pass);
}

TEST_CASE("equal targets with ample inventory give ratio near one") {
  Instance inst({2.0, 3.0}, {1.0, 1.0}, 1.0);
  DynamicInstance dyn(inst, 40, {40, 40});
  auto spec = manual_fixed({0.2, 0.2});
  auto report = simulate(dyn, spec, 4000, 21);
  CHECK(report.minmax_ratio >= 1.0 - 3.0 * report.minmax_ratio_se);
}
