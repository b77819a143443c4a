#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "fairassort/model.hpp"

namespace fairassort {

/// Oracle for constrained MNL assortment optimization: given an allowed
/// universe and (possibly modified) preference weights, returns an assortment
/// in the constraint family achieving at least beta() times the constrained
/// optimum of sum r_i v_i / (1 + sum v_i), or nullopt if the family has no
/// feasible set inside the allowed universe.
class ConstraintOracle {
 public:
  virtual ~ConstraintOracle() = default;

  virtual std::optional<std::vector<int>> best_assortment(
      const std::vector<int>& allowed, const std::vector<double>& revenues,
      const std::vector<double>& weights) const = 0;

  virtual double beta() const = 0;

  /// Whether concurrent calls on the same oracle are safe.
  virtual bool reentrant() const { return true; }
};

struct ConstrainedSolution {
  SalesVector xs;
  double revenue = 0.0;
  double chosen_r = 0.0;  // winning revenue threshold r_hat
  double chosen_v = 0.0;  // winning weight threshold v_hat
  std::vector<int> support;
};

/// beta-approximation algorithm for the static problem with an additional
/// constraint on the offered set. Enumerates thresholds r_hat in {r_i} and
/// v_hat in {v_i} union {alpha v_i}; for each pair restricts the universe to
/// {i : v_i >= v_hat}, replaces weights by v_hat (below the revenue cut) or
/// min(v_i, v_hat / alpha) (at or above it), queries the oracle, and converts
/// the best returned assortment into purchase probabilities. When every
/// subproblem is infeasible the all-zero solution is returned.
ConstrainedSolution solve_bms_constrained(const Instance& inst, const ConstraintOracle& oracle);

/// Exact oracle (beta = 1) for the unconstrained family: scans
/// revenue-ordered prefixes of the allowed universe.
std::unique_ptr<ConstraintOracle> oracle_unconstrained();

/// Predicate over a sorted candidate set of product indices.
using FamilyPredicate = std::function<bool(const std::vector<int>&)>;

/// Exact oracle (beta = 1) by exhaustive enumeration of subsets of the
/// allowed universe that satisfy the predicate. Refuses universes larger
/// than n_max.
std::unique_ptr<ConstraintOracle> oracle_bruteforce(FamilyPredicate family, int n_max = 16);

}  // namespace fairassort
