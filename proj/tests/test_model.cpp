#include <cmath>

#include "doctest.h"
#include "fairassort/json_io.hpp"
#include "fairassort/model.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fairassort;

TEST_CASE("instance invariants are validated") {
  CHECK_THROWS_AS(Instance({}, {}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Instance({1.0}, {0.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Instance({-1.0}, {1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Instance({1.0}, {1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Instance({1.0}, {1.0}, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Instance({1.0, 2.0}, {1.0}, 0.5), std::invalid_argument);
  CHECK_NOTHROW(Instance({1.0}, {1.0}, 1.0));
}

TEST_CASE("choice probabilities") {
  Instance single({10.0}, {2.0}, 1.0);
  CHECK(choice_prob(single, {0}, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  CHECK(choice_prob(single, {}, kNoPurchase) == doctest::Approx(1.0));
  CHECK(choice_prob(single, {}, 0) == 0.0);

  Instance three({1.0, 1.0, 1.0}, {1.0, 1.0, 3.0}, 0.5);
  CHECK(choice_prob(three, {1, 2}, 2) == doctest::Approx(3.0 / 5.0).epsilon(1e-14));
  CHECK(choice_prob(three, {1, 2}, 0) == 0.0);

  CHECK_THROWS_AS(choice_prob(three, {5}, 0), std::out_of_range);
  CHECK_THROWS_AS(choice_prob(three, {0}, 7), std::out_of_range);
}

TEST_CASE("choice probabilities sum to one over the offered set") {
  CounterRng rng = CounterRng::stream(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(8));
    Instance inst = fatest::random_instance(rng, n, 0.5);
    std::vector<int> S;
    for (int i = 0; i < n; ++i)
      if (rng.next_double() < 0.6) S.push_back(i);
    double total = choice_prob(inst, S, kNoPurchase);
    for (int i : S) total += choice_prob(inst, S, i);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("expected revenue") {
  double eps = 1.0 / 500.0;
  Instance sens = fatest::sensitivity_instance(eps, 1.0);
  double rev = expected_revenue(sens, {0, 1, 2});
  CHECK(rev == doctest::Approx((7.0 / 9.0 + 4.0) / (5.0 + eps)).epsilon(1e-14));
  CHECK(rev < 1.0);

  CHECK(expected_revenue(sens, {}) == 0.0);

  Instance single({10.0}, {2.0}, 1.0);
  CHECK(expected_revenue(single, {0}) == doctest::Approx(20.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("check_bms_feasible flags the right families") {
  Instance inst({5.0, 4.0}, {1.0, 2.0}, 0.5);

  SalesVector good;
  good.x0 = 0.4;
  good.x = {0.24, 0.36};
  CHECK(check_bms_feasible(inst, good).empty());

  SalesVector unbalanced = good;
  unbalanced.x = {0.36 * 0.5 * 0.5, 0.36};
  unbalanced.x0 = 1.0 - unbalanced.x[0] - unbalanced.x[1];
  auto viols = check_bms_feasible(inst, unbalanced);
  REQUIRE(viols.size() == 1);
  CHECK(viols[0].family == ConstraintViolation::Family::Balancing);
  CHECK(viols[0].index == 0);

  SalesVector invalid = good;
  invalid.x[0] = inst.weight(0) * invalid.x0 * 1.5;  // above the MNL cap
  invalid.x[1] = 1.0 - invalid.x0 - invalid.x[0];
  auto viols2 = check_bms_feasible(inst, invalid);
  bool has_mnl = false;
  for (const auto& v : viols2)
    if (v.family == ConstraintViolation::Family::MnlValidity && v.index == 0) has_mnl = true;
  CHECK(has_mnl);

  SalesVector bad_sum = good;
  bad_sum.x0 += 0.1;
  auto viols3 = check_bms_feasible(inst, bad_sum);
  REQUIRE(!viols3.empty());
  CHECK(viols3[0].family == ConstraintViolation::Family::SumToOne);
}

TEST_CASE("sales_to_distribution: full offer fixed point") {
  CounterRng rng = CounterRng::stream(12, 0);
  Instance inst = fatest::random_instance(rng, 5, 0.5);
  double denom = 1.0;
  for (int i = 0; i < inst.n(); ++i) denom += inst.weight(i);
  SalesVector xs;
  xs.x0 = 1.0 / denom;
  xs.x.resize(5);
  for (int i = 0; i < 5; ++i) xs.x[static_cast<std::size_t>(i)] = inst.weight(i) / denom;

  auto dist = sales_to_distribution(inst, xs);
  REQUIRE(dist.entries.size() == 1);
  CHECK(dist.entries[0].assortment == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(dist.entries[0].probability == doctest::Approx(1.0));
}

TEST_CASE("sales_to_distribution: worst-case chain has n distinct assortments") {
  for (int n : {2, 4, 7}) {
    for (double alpha : {0.3, 0.8, 1.0}) {
      Instance inst = fatest::chain_example_instance(n, alpha);
      SalesVector xs = fatest::chain_example_sales(n, alpha);
      REQUIRE(check_bms_feasible(inst, xs).empty());
      auto dist = sales_to_distribution(inst, xs);
      CHECK(dist.entries.size() == static_cast<std::size_t>(n));
      // Nested chain: consecutive entries must be supersets.
      for (std::size_t k = 1; k < dist.entries.size(); ++k) {
        const auto& small = dist.entries[k - 1].assortment;
        const auto& big = dist.entries[k].assortment;
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
      }
    }
  }
}

TEST_CASE("sales_to_distribution: random feasible vectors reconstruct") {
  CounterRng rng = CounterRng::stream(13, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(10));
    Instance inst = fatest::random_instance(rng, n, 0.5);
    SalesVector xs = fatest::random_feasible_sales(rng, inst);
    auto dist = sales_to_distribution(inst, xs);
    CHECK(dist.entries.size() <= static_cast<std::size_t>(n) + 1);
    double mass = 0.0;
    for (const auto& e : dist.entries) mass += e.probability;
    CHECK(std::abs(mass - 1.0) <= 1e-12);
    for (int i = 0; i < n; ++i) {
      double rec = fatest::reconstructed_probability(inst, dist, i);
      worst = std::max(worst, std::abs(rec - xs.x[static_cast<std::size_t>(i)]));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("sales_to_distribution rejects infeasible input") {
  Instance inst({1.0}, {1.0}, 1.0);
  SalesVector xs;
  xs.x0 = 0.4;
  xs.x = {0.6};  // 0.6 > v * x0 = 0.4
  CHECK_THROWS_AS(sales_to_distribution(inst, xs), std::invalid_argument);
}

TEST_CASE("instance JSON schema round-trips") {
  Instance inst({1.5, 2.0}, {0.5, 3.0}, 0.75);
  auto j = instance_to_json(inst);
  CHECK(j.at("alpha").get<double>() == 0.75);
  Instance back = instance_from_json(j);
  CHECK(back.revenues() == inst.revenues());
  CHECK(back.weights() == inst.weights());
  CHECK(back.alpha() == inst.alpha());

  DynamicInstance dyn(inst, 50, {3, 7});
  auto jd = dynamic_instance_to_json(dyn);
  DynamicInstance dback = dynamic_instance_from_json(jd);
  CHECK(dback.T() == 50);
  CHECK(dback.inventories() == std::vector<long>{3, 7});

  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"r", {1.0}}}), std::invalid_argument);
}
