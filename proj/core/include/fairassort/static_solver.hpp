#pragma once

#include <vector>

#include "fairassort/model.hpp"

namespace fairassort {

/// Optimal solution of the randomized static problem. The offered set is
/// exactly the products whose revenue reaches `revenue` (the optimal value)
/// and whose preference weight reaches `threshold_v`, each within a small
/// relative tolerance.
struct StaticSolution {
  SalesVector xs;
  double revenue = 0.0;
  double threshold_r = 0.0;  // smallest revenue at or above the optimum
  double threshold_v = 0.0;  // preference weight threshold
  std::vector<int> support;
};

/// Exact polynomial solver for the randomized static problem: enumerates the
/// O(n^2) threshold pairs (r_hat, v_hat), builds the closed-form candidate
/// w_i = min(v_i, v_hat / alpha) on {i : r_i >= r_hat, v_i >= v_hat} and
/// keeps the best. Revenue ties prefer fewer offered products, then the
/// lexicographically smallest support.
StaticSolution solve_bms(const Instance& inst);

struct DeterministicSolution {
  std::vector<int> assortment;
  double revenue = 0.0;
};

/// Exact solver for the single-assortment variant: for each candidate weight
/// threshold, restricts the universe to weights within [v, v/alpha] and runs
/// the revenue-ordered scan.
DeterministicSolution solve_bms_deterministic(const Instance& inst);

/// Families of instances whose randomization gap attains the known lower
/// bound: geometric weight decay with r_i = 1 / v_i. For alpha > 1 - 1/n the
/// decay rate is (1 - 1/n) with eps = (1 - 2/e)/n; otherwise the rate is
/// alpha (1 - eps) with (1 + n eps)^2 = 2 - 2/e.
Instance make_gap_instance(int n, double alpha);

}  // namespace fairassort
