#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fairassort/model.hpp"
#include "fairassort/upper_bound.hpp"

namespace fairassort {

/// Exact expected sales E[min(Binomial(T, p), c)] of a product offered at
/// constant purchase probability p with initial inventory c.
double capped_mean_sales(long T, double p, long c);

/// Evaluation cache around capped_mean_sales for a fixed horizon. Not
/// thread-safe; intended for single-threaded policy calibration.
class CappedSalesCurve {
 public:
  explicit CappedSalesCurve(long T) : T_(T) {}

  double operator()(double p, long c) const;
  long horizon() const { return T_; }

 private:
  long T_;
  mutable std::unordered_map<std::uint64_t, double> cache_;
};

enum class PolicyKind { FixedTarget, CappedEqualShare, Heuristic1, Heuristic2 };

/// A dynamic control policy: per-product target purchase probabilities,
/// offered while the product is available. For the alpha = 1 variant,
/// availability means realized sales below the uniform cap; for alpha < 1 it
/// means remaining inventory. Heuristic kinds reuse `targets` as the initial
/// targets and are recalibrated by resolving during simulation.
struct PolicySpec {
  PolicyKind kind = PolicyKind::FixedTarget;
  std::vector<double> targets;   // x_hat
  long cap = 0;                  // uniform sales cap (CappedEqualShare only)
  std::vector<int> support;
  double g_min = 0.0;            // min expected sales over the support
  std::vector<double> g_values;  // per-product expected sales at the targets
  double upper_bound_objective = 0.0;
  double epsilon2 = 0.0;         // bisection precision used
  int max_bisection_iterations = 0;
};

/// Policy construction from scratch: obtains the upper-bound solution (FPTAS
/// at eps/2 for alpha < 1, the exact algorithm for alpha = 1) and calibrates
/// targets so the expected sales of offered products stay within a factor
/// alpha of each other.
PolicySpec build_policy(const DynamicInstance& dyn, double eps);

/// Calibration from a given upper-bound solution. For alpha < 1, products
/// whose uncapped expected sales exceed G_min / alpha get their target
/// bisected down until G lands in [(1 - eps2) G_min / alpha, G_min / alpha];
/// eps2 must not exceed 1 - alpha. For alpha = 1, targets are kept and sales
/// are capped at the minimum support inventory.
PolicySpec calibrate_policy(const DynamicInstance& dyn, const UpperBoundSolution& ub,
                            double eps2);

/// Iteration budget of the calibration bisection.
int bisection_iteration_cap(const DynamicInstance& dyn, double eps2);

/// Purchase probabilities for period t of a fixed-target or capped policy:
/// the target while the product is available, zero otherwise. Heuristic
/// policies are driven through heuristic_resolve by the simulator.
std::vector<double> policy_step(const PolicySpec& spec, const std::vector<long>& remaining,
                                const std::vector<long>& cumulative_sales, long t);

/// Solves the history-aware resolving program: maximize revenue of the
/// remaining horizon subject to MNL validity, cumulative pairwise balancing
/// of targets and the expected-inventory budget. cum_targets holds the sums
/// of per-period targets over periods 1..t-1. Always feasible (the all-zero
/// solution qualifies); infeasibility reported by the LP indicates a bug and
/// raises std::logic_error.
std::vector<double> heuristic_resolve(const DynamicInstance& dyn,
                                      const std::vector<int>& support,
                                      const std::vector<double>& cum_targets,
                                      const std::vector<long>& realized_sales, long t);

}  // namespace fairassort
