#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairassort {

/// Sentinel index for the no-purchase option.
inline constexpr int kNoPurchase = -1;

/// Default relative tolerance for feasibility checks.
inline constexpr double kFeasTol = 1e-9;

/// A static assortment problem: product revenues, MNL preference weights
/// (no-purchase weight normalized to 1) and the market share balancing
/// parameter alpha. Immutable after construction; all operations on it are
/// pure and thread-safe.
class Instance {
 public:
  Instance(std::vector<double> revenues, std::vector<double> weights, double alpha);

  int n() const { return static_cast<int>(r_.size()); }
  const std::vector<double>& revenues() const { return r_; }
  const std::vector<double>& weights() const { return v_; }
  double revenue(int i) const { return r_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return v_[static_cast<std::size_t>(i)]; }
  double alpha() const { return alpha_; }

  double min_weight() const;
  double max_weight() const;

 private:
  std::vector<double> r_;
  std::vector<double> v_;
  double alpha_;
};

/// Purchase probabilities (x0, x1..xn): the decision object of the
/// sales-based formulation. x0 is the no-purchase probability.
struct SalesVector {
  double x0 = 1.0;
  std::vector<double> x;

  double sum_purchases() const;
  /// Products with purchase probability above `threshold`.
  std::vector<int> support(double threshold = 1e-12) const;
};

/// A probability mass over a nested chain of assortments.
struct AssortmentDistribution {
  struct Entry {
    std::vector<int> assortment;  // sorted product indices
    double probability;
  };
  std::vector<Entry> entries;
};

/// Static instance extended with a selling horizon and per-product initial
/// inventories.
class DynamicInstance {
 public:
  DynamicInstance(Instance base, long horizon, std::vector<long> inventories);

  const Instance& base() const { return base_; }
  long T() const { return T_; }
  const std::vector<long>& inventories() const { return c_; }
  long inventory(int i) const { return c_[static_cast<std::size_t>(i)]; }
  long min_inventory() const;

 private:
  Instance base_;
  long T_;
  std::vector<long> c_;
};

/// MNL purchase probability of `item` (a product index or kNoPurchase) when
/// assortment S is offered: v_i / (1 + sum_{j in S} v_j) for i in S,
/// 1 / (1 + sum_{j in S} v_j) for no-purchase, 0 otherwise.
double choice_prob(const Instance& inst, const std::vector<int>& S, int item);

/// Expected revenue of deterministically offering S:
/// sum_{i in S} r_i v_i / (1 + sum_{i in S} v_i). Zero for the empty set.
double expected_revenue(const Instance& inst, const std::vector<int>& S);

/// One violated constraint of the sales-based formulation.
struct ConstraintViolation {
  enum class Family { SumToOne, MnlValidity, Balancing };
  Family family;
  int index;         // product index, or -1 for the aggregate constraint
  double magnitude;  // relative violation size
};

/// Pure check of the three BMS-Sales constraint families. Empty result means
/// feasible within the (relative) tolerance.
std::vector<ConstraintViolation> check_bms_feasible(const Instance& inst,
                                                    const SalesVector& xs,
                                                    double tol = kFeasTol);

/// Converts purchase probabilities into a distribution over nested
/// assortments attaining them. Requires x0 + sum x_i = 1 and
/// 0 <= x_i <= v_i x0 (balancing is not required). Products are ranked by
/// x_i / v_i descending, ties broken by product index; the k-th assortment is
/// the top-k prefix and gets mass
/// (x_k / v_k - x_{k+1} / v_{k+1}) (1 + sum_{j <= k} v_j).
/// Entries with mass below 1e-15 are pruned and the rest renormalized.
AssortmentDistribution sales_to_distribution(const Instance& inst,
                                             const SalesVector& xs,
                                             double tol = kFeasTol);

std::string to_string(ConstraintViolation::Family family);

}  // namespace fairassort
