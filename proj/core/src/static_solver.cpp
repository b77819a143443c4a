#include "fairassort/static_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairassort {

namespace {

std::vector<double> distinct_sorted(const std::vector<double>& values) {
  std::vector<double> out = values;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double rel_tol(double scale) { return 1e-9 * std::max(1.0, scale); }

struct Candidate {
  double revenue = -1.0;
  double v_hat = 0.0;
  std::vector<int> support;
  SalesVector xs;
};

/// Evaluates the closed-form candidate on {i : r_i >= r_cut, v_i >= v_cut}.
Candidate evaluate(const Instance& inst, double r_cut, double v_cut, double v_hat) {
  Candidate c;
  c.v_hat = v_hat;
  double w_cap = v_hat / inst.alpha();
  double w_sum = 0.0;
  std::vector<double> w(static_cast<std::size_t>(inst.n()), 0.0);
  for (int i = 0; i < inst.n(); ++i) {
    if (inst.revenue(i) >= r_cut && inst.weight(i) >= v_cut) {
      double wi = std::min(inst.weight(i), w_cap);
      w[static_cast<std::size_t>(i)] = wi;
      w_sum += wi;
      c.support.push_back(i);
    }
  }
  c.xs.x0 = 1.0 / (1.0 + w_sum);
  c.xs.x.assign(static_cast<std::size_t>(inst.n()), 0.0);
  double rev = 0.0;
  for (int i : c.support) {
    double xi = w[static_cast<std::size_t>(i)] * c.xs.x0;
    c.xs.x[static_cast<std::size_t>(i)] = xi;
    rev += inst.revenue(i) * xi;
  }
  c.revenue = rev;
  return c;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.revenue != b.revenue) return a.revenue > b.revenue;
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return a.support < b.support;
}

}  // namespace

StaticSolution solve_bms(const Instance& inst) {
  const auto r_vals = distinct_sorted(inst.revenues());
  const auto v_vals = distinct_sorted(inst.weights());

  double best_rev = 0.0;
  for (double r_hat : r_vals) {
    for (double v_hat : v_vals) {
      Candidate c = evaluate(inst, r_hat, v_hat, v_hat);
      best_rev = std::max(best_rev, c.revenue);
    }
  }

  // Second pass: canonicalize near-optimal candidates to the threshold shape
  // {i : r_i >= R* - tol, v_i >= v_hat - tol} before tie-breaking, so the
  // returned support matches the structure of the optimum.
  Candidate best;
  for (double r_hat : r_vals) {
    for (double v_hat : v_vals) {
      Candidate raw = evaluate(inst, r_hat, v_hat, v_hat);
      if (raw.revenue < best_rev * (1.0 - 1e-12)) continue;
      Candidate canon =
          evaluate(inst, best_rev - rel_tol(best_rev), v_hat - rel_tol(v_hat), v_hat);
      if (canon.revenue < best_rev * (1.0 - 1e-11)) canon = raw;
      if (better(canon, best)) best = canon;
    }
  }

  StaticSolution sol;
  sol.revenue = best.revenue;
  sol.threshold_v = best.v_hat;
  sol.xs = std::move(best.xs);
  sol.support = std::move(best.support);
  sol.threshold_r = 0.0;
  double tol_r = rel_tol(sol.revenue);
  bool found = false;
  for (double r : r_vals) {
    if (r >= sol.revenue - tol_r) {
      sol.threshold_r = r;
      found = true;
      break;
    }
  }
  if (!found) sol.threshold_r = sol.revenue;
  return sol;
}

DeterministicSolution solve_bms_deterministic(const Instance& inst) {
  DeterministicSolution best;  // empty assortment, revenue 0
  const auto v_vals = distinct_sorted(inst.weights());

  std::vector<int> order(static_cast<std::size_t>(inst.n()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.revenue(a) != inst.revenue(b)) return inst.revenue(a) > inst.revenue(b);
    return a < b;
  });

  for (double v_low : v_vals) {
    // Universe restricted to weights within [v_low, v_low / alpha]; any
    // subset of it satisfies the deterministic balancing condition.
    double num = 0.0, denom = 1.0;
    std::vector<int> prefix;
    std::vector<int> best_prefix;
    double best_rev = 0.0;
    for (int i : order) {
      double vi = inst.weight(i);
      if (vi < v_low || vi * inst.alpha() > v_low * (1.0 + 1e-12)) continue;
      prefix.push_back(i);
      num += inst.revenue(i) * vi;
      denom += vi;
      if (num / denom > best_rev) {
        best_rev = num / denom;
        best_prefix = prefix;
      }
    }
    if (best_rev > best.revenue) {
      best.revenue = best_rev;
      std::sort(best_prefix.begin(), best_prefix.end());
      best.assortment = std::move(best_prefix);
    }
  }
  return best;
}

Instance make_gap_instance(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("make_gap_instance: n must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("make_gap_instance: alpha must be in (0, 1]");

  std::vector<double> v(static_cast<std::size_t>(n)), r(static_cast<std::size_t>(n));
  if (n == 1) {
    // Degenerate limit of either construction; any single product attains
    // gap ratio one.
    double eps = 1.0 - 2.0 / std::exp(1.0);
    v[0] = eps;
    r[0] = 1.0 / eps;
    return Instance(std::move(r), std::move(v), alpha);
  }

  if (alpha > 1.0 - 1.0 / n) {
    double eps = (1.0 - 2.0 / std::exp(1.0)) / n;
    double decay = 1.0 - 1.0 / n;
    double vi = eps;
    for (int i = 0; i < n; ++i) {
      vi *= decay;  // v_i = (1 - 1/n)^(i+1) eps, one-based exponent
      v[static_cast<std::size_t>(i)] = vi;
      r[static_cast<std::size_t>(i)] = 1.0 / vi;
    }
  } else {
    double eps = (std::sqrt(2.0 - 2.0 / std::exp(1.0)) - 1.0) / n;
    double decay = alpha * (1.0 - eps);
    double vi = eps;
    for (int i = 0; i < n; ++i) {
      vi *= decay;
      v[static_cast<std::size_t>(i)] = vi;
      r[static_cast<std::size_t>(i)] = 1.0 / vi;
    }
  }
  return Instance(std::move(r), std::move(v), alpha);
}

}  // namespace fairassort
