#pragma once

// Test-only oracles: independent brute-force routes used to freeze expected
// values. None of these share code with the solver paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "fairassort/lp.hpp"
#include "fairassort/model.hpp"
#include "fairassort/upper_bound.hpp"

namespace fatest {

using namespace fairassort;

/// Optimal value of the randomized static problem by support enumeration:
/// every support induces a linear program over (x0, x_support) with pairwise
/// balancing constraints.
inline double bms_support_lp_oracle(const Instance& inst) {
  const int n = inst.n();
  LpSolver solver;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) members.push_back(i);
    const int k = static_cast<int>(members.size());

    LinearProgram lp;
    lp.num_vars = 1 + k;
    lp.objective.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
    lp.lower.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
    lp.upper.assign(static_cast<std::size_t>(lp.num_vars), 1.0);
    for (int j = 0; j < k; ++j)
      lp.objective[static_cast<std::size_t>(1 + j)] =
          inst.revenue(members[static_cast<std::size_t>(j)]);

    std::vector<double> row(static_cast<std::size_t>(lp.num_vars), 0.0);
    row[0] = 1.0;
    for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(1 + j)] = 1.0;
    lp.add_row(row, LinearProgram::Rel::Eq, 1.0);
    for (int j = 0; j < k; ++j) {
      std::fill(row.begin(), row.end(), 0.0);
      row[static_cast<std::size_t>(1 + j)] = 1.0;
      row[0] = -inst.weight(members[static_cast<std::size_t>(j)]);
      lp.add_row(row, LinearProgram::Rel::Le, 0.0);
    }
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        std::fill(row.begin(), row.end(), 0.0);
        row[static_cast<std::size_t>(1 + a)] = 1.0;
        row[static_cast<std::size_t>(1 + b)] = -inst.alpha();
        lp.add_row(row, LinearProgram::Rel::Ge, 0.0);
      }
    }
    LpSolution sol = solver.solve(lp);
    if (sol.status == LpStatus::Optimal) best = std::max(best, sol.objective);
  }
  return best;
}

/// Deterministic-variant optimum by full enumeration with the weight-ratio
/// feasibility filter.
inline double bms_deterministic_oracle(const Instance& inst) {
  const int n = inst.n();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double vmin = 1e300, vmax = 0.0, num = 0.0, denom = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      vmin = std::min(vmin, inst.weight(i));
      vmax = std::max(vmax, inst.weight(i));
      num += inst.revenue(i) * inst.weight(i);
      denom += inst.weight(i);
    }
    if (vmin < inst.alpha() * vmax - 1e-12) continue;
    best = std::max(best, num / denom);
  }
  return best;
}

/// Exhaustive optimum of the constrained static problem: supports in the
/// family, and per support the closed-form two-threshold solutions over the
/// candidate weight levels and revenue cuts.
inline double bms_constrained_oracle(const Instance& inst,
                                     const std::function<bool(const std::vector<int>&)>& family) {
  const int n = inst.n();
  double best = family({}) ? 0.0 : -1.0;
  std::vector<int> members;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    members.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) members.push_back(i);
    if (!family(members)) continue;

    double v_min_s = 1e300;
    for (int i : members) v_min_s = std::min(v_min_s, inst.weight(i));

    std::vector<double> levels;
    for (int i : members) {
      levels.push_back(inst.weight(i));
      levels.push_back(inst.alpha() * inst.weight(i));
    }
    std::vector<double> cuts;
    for (int i : members) cuts.push_back(inst.revenue(i));
    cuts.push_back(1e300);  // every revenue below the cut

    for (double level : levels) {
      if (level > v_min_s + 1e-15) continue;
      for (double cut : cuts) {
        double w_sum = 0.0, rev_w = 0.0;
        for (int i : members) {
          double wi = inst.revenue(i) < cut
                          ? level
                          : std::min(inst.weight(i), level / inst.alpha());
          w_sum += wi;
          rev_w += inst.revenue(i) * wi;
        }
        best = std::max(best, rev_w / (1.0 + w_sum));
      }
    }
  }
  return std::max(best, 0.0);
}

/// Exhaustive multiple-choice knapsack optimum by product enumeration.
inline double mckp_exhaustive_oracle(const MckpInstance& mckp) {
  const int m = static_cast<int>(mckp.classes.size());
  double best = 0.0;
  std::vector<int> pick(static_cast<std::size_t>(m), -1);
  std::function<void(int, double, double)> rec = [&](int c, double value, double weight) {
    if (weight > mckp.capacity + 1e-12) return;
    if (c == m) {
      best = std::max(best, value);
      return;
    }
    rec(c + 1, value, weight);
    const auto& items = mckp.classes[static_cast<std::size_t>(c)];
    for (const auto& it : items) rec(c + 1, value + it.value, weight + it.weight);
  };
  rec(0, 0.0, 0.0);
  return best;
}

/// E[min(Binomial(T, p), c)] by direct pmf enumeration with the ratio
/// recurrence in long double.
inline double capped_mean_enum_oracle(long T, double p, long c) {
  if (p <= 0.0 || c == 0) return 0.0;
  if (p >= 1.0) return static_cast<double>(std::min(T, c));
  long double pmf = std::pow(1.0L - static_cast<long double>(p), static_cast<long double>(T));
  long double ratio = static_cast<long double>(p) / (1.0L - static_cast<long double>(p));
  long double acc = 0.0L;
  for (long k = 0; k <= T; ++k) {
    acc += static_cast<long double>(std::min(k, c)) * pmf;
    pmf *= ratio * static_cast<long double>(T - k) / static_cast<long double>(k + 1);
  }
  return static_cast<double>(acc);
}

/// Optimal value of a linear program by vertex enumeration: all choices of
/// num_vars active constraints among rows and bound facets. Assumes a
/// feasible bounded program.
inline double lp_vertex_oracle(const LinearProgram& lp) {
  const int n = lp.num_vars;
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& row : lp.rows) planes.push_back({row.coeffs, row.rhs});
  for (int j = 0; j < n; ++j) {
    double lo = lp.lower.empty() ? 0.0 : lp.lower[static_cast<std::size_t>(j)];
    double hi = lp.upper.empty() ? kLpInfinity : lp.upper[static_cast<std::size_t>(j)];
    std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
    unit[static_cast<std::size_t>(j)] = 1.0;
    if (std::isfinite(lo)) planes.push_back({unit, lo});
    if (std::isfinite(hi)) planes.push_back({unit, hi});
  }

  auto feasible = [&](const std::vector<double>& x) {
    for (const auto& row : lp.rows) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j)
        lhs += row.coeffs[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      double slack = lhs - row.rhs;
      if (row.rel == LinearProgram::Rel::Le && slack > 1e-7) return false;
      if (row.rel == LinearProgram::Rel::Ge && slack < -1e-7) return false;
      if (row.rel == LinearProgram::Rel::Eq && std::abs(slack) > 1e-7) return false;
    }
    for (int j = 0; j < n; ++j) {
      double lo = lp.lower.empty() ? 0.0 : lp.lower[static_cast<std::size_t>(j)];
      double hi = lp.upper.empty() ? kLpInfinity : lp.upper[static_cast<std::size_t>(j)];
      if (x[static_cast<std::size_t>(j)] < lo - 1e-7) return false;
      if (std::isfinite(hi) && x[static_cast<std::size_t>(j)] > hi + 1e-7) return false;
    }
    return true;
  };

  const int total = static_cast<int>(planes.size());
  double best = -1e300;
  std::vector<int> comb(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      // Solve the n x n system of the active planes by Gaussian elimination.
      std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n + 1)));
      for (int i = 0; i < n; ++i) {
        const Plane& pl = planes[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pl.a[static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = pl.b;
      }
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        double mag = 1e-9;
        for (int r = col; r < n; ++r) {
          if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > mag) {
            mag = std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
            piv = r;
          }
        }
        if (piv < 0) return;  // singular active set
        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                     a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
          for (int cc = col; cc <= n; ++cc)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
        }
      }
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        x[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] /
                                         a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
      if (!feasible(x)) return;
      double obj = 0.0;
      for (int j = 0; j < n; ++j)
        obj += lp.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      best = std::max(best, obj);
      return;
    }
    for (int i = start; i < total; ++i) {
      comb[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// Reconstructed purchase probability of product i under a distribution over
/// assortments, by direct summation.
inline double reconstructed_probability(const Instance& inst, const AssortmentDistribution& dist,
                                        int item) {
  double acc = 0.0;
  for (const auto& entry : dist.entries) {
    acc += entry.probability * choice_prob(inst, entry.assortment, item);
  }
  return acc;
}

}  // namespace fatest
