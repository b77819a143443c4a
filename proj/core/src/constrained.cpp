#include "fairassort/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fairassort {

namespace {

std::vector<double> distinct_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

double assortment_value(const std::vector<int>& S, const std::vector<double>& r,
                        const std::vector<double>& w) {
  double num = 0.0, denom = 1.0;
  for (int i : S) {
    num += r[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    denom += w[static_cast<std::size_t>(i)];
  }
  return num / denom;
}

class UnconstrainedMnlOracle final : public ConstraintOracle {
 public:
  std::optional<std::vector<int>> best_assortment(
      const std::vector<int>& allowed, const std::vector<double>& revenues,
      const std::vector<double>& weights) const override {
    std::vector<int> order = allowed;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double ra = revenues[static_cast<std::size_t>(a)];
      double rb = revenues[static_cast<std::size_t>(b)];
      if (ra != rb) return ra > rb;
      return a < b;
    });
    std::vector<int> best;  // empty prefix, value 0
    double best_value = 0.0;
    double num = 0.0, denom = 1.0;
    std::vector<int> prefix;
    for (int i : order) {
      prefix.push_back(i);
      num += revenues[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(i)];
      denom += weights[static_cast<std::size_t>(i)];
      if (num / denom > best_value) {
        best_value = num / denom;
        best = prefix;
      }
    }
    std::sort(best.begin(), best.end());
    return best;
  }

  double beta() const override { return 1.0; }
};

class BruteForceOracle final : public ConstraintOracle {
 public:
  BruteForceOracle(FamilyPredicate family, int n_max)
      : family_(std::move(family)), n_max_(n_max) {}

  std::optional<std::vector<int>> best_assortment(
      const std::vector<int>& allowed, const std::vector<double>& revenues,
      const std::vector<double>& weights) const override {
    if (static_cast<int>(allowed.size()) > n_max_)
      throw std::invalid_argument("oracle_bruteforce: universe exceeds n_max");
    const int k = static_cast<int>(allowed.size());
    bool found = false;
    double best_value = 0.0;
    std::vector<int> best;
    std::vector<int> subset;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      subset.clear();
      for (int b = 0; b < k; ++b) {
        if (mask & (1u << b)) subset.push_back(allowed[static_cast<std::size_t>(b)]);
      }
      if (!family_(subset)) continue;
      double value = assortment_value(subset, revenues, weights);
      if (!found || value > best_value) {
        found = true;
        best_value = value;
        best = subset;
      }
    }
    if (!found) return std::nullopt;
    return best;
  }

  double beta() const override { return 1.0; }

 private:
  FamilyPredicate family_;
  int n_max_;
};

}  // namespace

std::unique_ptr<ConstraintOracle> oracle_unconstrained() {
  return std::make_unique<UnconstrainedMnlOracle>();
}

std::unique_ptr<ConstraintOracle> oracle_bruteforce(FamilyPredicate family, int n_max) {
  return std::make_unique<BruteForceOracle>(std::move(family), n_max);
}

ConstrainedSolution solve_bms_constrained(const Instance& inst, const ConstraintOracle& oracle) {
  const int n = inst.n();
  const auto r_vals = distinct_sorted(inst.revenues());
  std::vector<double> v_cands = inst.weights();
  for (double v : inst.weights()) v_cands.push_back(inst.alpha() * v);
  const auto v_vals = distinct_sorted(std::move(v_cands));

  ConstrainedSolution best;  // all-zero fallback when every subproblem is infeasible
  best.xs.x0 = 1.0;
  best.xs.x.assign(static_cast<std::size_t>(n), 0.0);
  best.revenue = 0.0;
  bool have_candidate = false;

  // Oracle responses keyed on (allowed set, modified weights); distinct
  // (r_hat, v_hat) pairs frequently induce the same transformed problem.
  std::map<std::vector<std::uint64_t>, std::optional<std::vector<int>>> memo;

  std::vector<double> v_mod(static_cast<std::size_t>(n), 0.0);
  for (double v_hat : v_vals) {
    std::vector<int> allowed;
    for (int i = 0; i < n; ++i)
      if (inst.weight(i) >= v_hat) allowed.push_back(i);
    double w_cap = v_hat / inst.alpha();

    for (double r_hat : r_vals) {
      std::vector<std::uint64_t> key;
      key.reserve(allowed.size() * 2 + 1);
      for (int i : allowed) {
        double vi = inst.revenue(i) < r_hat ? v_hat : std::min(inst.weight(i), w_cap);
        v_mod[static_cast<std::size_t>(i)] = vi;
        std::uint64_t bits;
        std::memcpy(&bits, &vi, sizeof(bits));
        key.push_back(static_cast<std::uint64_t>(i));
        key.push_back(bits);
      }

      auto it = memo.find(key);
      if (it == memo.end()) {
        it = memo.emplace(std::move(key), oracle.best_assortment(allowed, inst.revenues(), v_mod))
                 .first;
      }
      const auto& result = it->second;
      if (!result.has_value()) continue;  // infeasible subproblem: empty candidate

      std::vector<int> chosen = *result;
      std::sort(chosen.begin(), chosen.end());
      double w_sum = 0.0;
      for (int i : chosen) w_sum += v_mod[static_cast<std::size_t>(i)];
      double x0 = 1.0 / (1.0 + w_sum);
      double revenue = 0.0;
      for (int i : chosen) revenue += inst.revenue(i) * v_mod[static_cast<std::size_t>(i)] * x0;

      bool take = !have_candidate || revenue > best.revenue ||
                  (revenue == best.revenue &&
                   (chosen.size() < best.support.size() ||
                    (chosen.size() == best.support.size() && chosen < best.support)));
      if (take) {
        have_candidate = true;
        best.revenue = revenue;
        best.chosen_r = r_hat;
        best.chosen_v = v_hat;
        best.support = chosen;
        best.xs.x0 = x0;
        best.xs.x.assign(static_cast<std::size_t>(n), 0.0);
        for (int i : chosen)
          best.xs.x[static_cast<std::size_t>(i)] = v_mod[static_cast<std::size_t>(i)] * x0;
      }
    }
  }
  return best;
}

}  // namespace fairassort
