#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fairassort/model.hpp"
#include "fairassort/policy.hpp"

namespace fairassort {

enum class SampleMode {
  DirectCategorical,  // sample the purchase outcome from the target probabilities
  SampleAssortment,   // sample a nested assortment, then the MNL choice within it
};

struct SimulateOptions {
  long replicates = 400;
  std::uint64_t seed = 0;
  SampleMode mode = SampleMode::DirectCategorical;
  unsigned threads = 0;
  bool keep_trajectories = false;
  /// Optimum of the upper-bound problem used for normalization; when NaN the
  /// policy's own upper_bound_objective is used.
  double ub_objective = std::numeric_limits<double>::quiet_NaN();
};

struct SimulationReport {
  long replicates = 0;
  double mean_revenue = 0.0;
  double se_revenue = 0.0;
  double normalized_revenue = 0.0;
  std::vector<double> mean_sales;
  double minmax_ratio = 1.0;     // min over max nonzero mean sales
  double minmax_ratio_se = 0.0;  // delta-method standard error of the ratio
  long balancing_violations = 0; // cumulative-target balancing failures (heuristics)
  std::vector<double> replicate_revenue;            // kept when requested
  std::vector<std::vector<long>> replicate_sales;   // kept when requested
};

/// Monte-Carlo execution of a policy over the horizon with inventory
/// tracking. One independent RNG stream per replicate, derived from
/// (seed, replicate index): results do not depend on the thread count.
/// Realized sales exceeding inventory raise std::logic_error.
SimulationReport simulate(const DynamicInstance& dyn, const PolicySpec& spec,
                          const SimulateOptions& options);

SimulationReport simulate(const DynamicInstance& dyn, const PolicySpec& spec, long replicates,
                          std::uint64_t seed, SampleMode mode = SampleMode::DirectCategorical);

struct BalanceAudit {
  bool pass = false;
  double ratio = 0.0;
  double threshold = 0.0;  // alpha - tol
  double margin = 0.0;     // ratio - threshold
};

/// Checks minmax_ratio >= alpha - tol. A negative tol requests the default
/// of three delta-method standard errors of the ratio.
BalanceAudit audit_balancing(const SimulationReport& report, double alpha, double tol = -1.0);

}  // namespace fairassort
