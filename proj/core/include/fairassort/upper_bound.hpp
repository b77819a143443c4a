#pragma once

#include <vector>

#include "fairassort/model.hpp"

namespace fairassort {

/// Solution of the deterministic relaxation of the dynamic problem: average
/// per-period purchase probabilities additionally capped at c_i / T, with
/// objective T * sum r_i x_i.
struct UpperBoundSolution {
  SalesVector xs;
  double objective = 0.0;
  double epsilon = 0.0;  // accuracy used; 0 for exact paths
  std::vector<int> support;

  struct GridStats {
    int grid0_size = 0;
    int gridy_size = 0;
    long pairs = 0;
    long mckp_runs = 0;
  };
  GridStats stats;
};

struct MckpItem {
  double value = 0.0;
  double weight = 0.0;
};

/// Multiple-choice knapsack: pick at most one item per class, total weight at
/// most `capacity`, maximizing total value.
struct MckpInstance {
  std::vector<std::vector<MckpItem>> classes;
  double capacity = 0.0;
};

struct MckpSelection {
  std::vector<int> chosen;  // item index per class, -1 for none
  double value = 0.0;
  double weight = 0.0;
};

/// (1 - eps)-approximation via a value-scaling dynamic program: values are
/// floored to a grid of eps * v_max / m (m = number of classes) and the DP
/// minimizes weight per scaled value. Dominated items (heavier, not more
/// valuable) are pruned per class first.
MckpSelection solve_mckp(const MckpInstance& mckp, double eps);

/// FPTAS for the upper-bound problem: geometric guess grids for the
/// no-purchase probability and the maximum purchase probability with ratio
/// 1 + delta, delta = (1 - eps)^(-1/4) - 1, and a multiple-choice knapsack
/// per guess solved to factor 1 / (1 + delta). Output is feasible and its
/// objective is at least (1 - eps) times the optimum. eps must lie in
/// (0, 1/2).
UpperBoundSolution solve_upper_bound_fptas(const DynamicInstance& dyn, double eps,
                                           unsigned threads = 0);

/// Exact polynomial algorithm for alpha = 1: all offered products share one
/// purchase probability x_bar; enumerates x_bar over {c_i / T} and
/// {v_i / (1 + l v_i)} and the support size k, offering the top-k revenues
/// among feasible products.
UpperBoundSolution solve_upper_bound_alpha1(const DynamicInstance& dyn);

/// Linearization of the balancing constraint on a fixed support in the
/// desk-scale exact oracle.
enum class BalanceEncoding { Pairwise, AuxVariable };

/// Exact desk-scale oracle: enumerates all supports and solves the
/// support-restricted linear program. Exponential in n; refuses n > n_max.
UpperBoundSolution solve_upper_bound_exact(const DynamicInstance& dyn, int n_max = 12,
                                           BalanceEncoding encoding = BalanceEncoding::Pairwise);

}  // namespace fairassort
