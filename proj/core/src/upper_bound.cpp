#include "fairassort/upper_bound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fairassort/lp.hpp"
#include "fairassort/parallel.hpp"

namespace fairassort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> distinct_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

UpperBoundSolution make_solution(const DynamicInstance& dyn, std::vector<double> x,
                                 double epsilon) {
  UpperBoundSolution sol;
  sol.xs.x = std::move(x);
  double sum = std::accumulate(sol.xs.x.begin(), sol.xs.x.end(), 0.0);
  sol.xs.x0 = 1.0 - sum;
  sol.epsilon = epsilon;
  double rev = 0.0;
  for (int i = 0; i < dyn.base().n(); ++i) {
    double xi = sol.xs.x[static_cast<std::size_t>(i)];
    rev += dyn.base().revenue(i) * xi;
    if (xi > 1e-15) sol.support.push_back(i);
  }
  sol.objective = static_cast<double>(dyn.T()) * rev;
  return sol;
}

}  // namespace

MckpSelection solve_mckp(const MckpInstance& mckp, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("solve_mckp: eps must be in (0, 1)");

  const int m_all = static_cast<int>(mckp.classes.size());
  MckpSelection sel;
  sel.chosen.assign(static_cast<std::size_t>(m_all), -1);

  // Per-class preprocessing: drop items that cannot fit, then dominated
  // items (not lighter and not more valuable survive only as the best
  // value per weight level).
  struct Kept {
    int cls;
    std::vector<MckpItem> items;
    std::vector<int> orig;
  };
  std::vector<Kept> kept;
  double vmax = 0.0;
  for (int c = 0; c < m_all; ++c) {
    const auto& items = mckp.classes[static_cast<std::size_t>(c)];
    std::vector<int> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& ia = items[static_cast<std::size_t>(a)];
      const auto& ib = items[static_cast<std::size_t>(b)];
      if (ia.weight != ib.weight) return ia.weight < ib.weight;
      return ia.value > ib.value;
    });
    Kept k;
    k.cls = c;
    double best_value = -kInf;
    for (int idx : order) {
      const auto& it = items[static_cast<std::size_t>(idx)];
      if (it.weight > mckp.capacity || it.value < 0.0 || it.weight < 0.0) continue;
      if (it.value <= best_value) continue;  // dominated
      best_value = it.value;
      k.items.push_back(it);
      k.orig.push_back(idx);
      vmax = std::max(vmax, it.value);
    }
    if (!k.items.empty()) kept.push_back(std::move(k));
  }
  if (kept.empty() || vmax <= 0.0) return sel;

  const int m = static_cast<int>(kept.size());
  const double unit = eps * vmax / static_cast<double>(m);

  std::vector<long> class_top(static_cast<std::size_t>(m), 0);
  long v_total = 0;
  for (int c = 0; c < m; ++c) {
    long top = 0;
    for (const auto& it : kept[static_cast<std::size_t>(c)].items)
      top = std::max(top, static_cast<long>(std::floor(it.value / unit)));
    class_top[static_cast<std::size_t>(c)] = top;
    v_total += top;
  }

  // dp[v] = minimal weight achieving scaled value exactly v; choice matrix
  // for reconstruction.
  std::vector<double> dp(static_cast<std::size_t>(v_total + 1), kInf);
  dp[0] = 0.0;
  std::vector<std::int16_t> choice(static_cast<std::size_t>(m) * static_cast<std::size_t>(v_total + 1),
                                   -1);
  long reach = 0;
  for (int c = 0; c < m; ++c) {
    const auto& items = kept[static_cast<std::size_t>(c)].items;
    std::int16_t* row = &choice[static_cast<std::size_t>(c) * static_cast<std::size_t>(v_total + 1)];
    long new_reach = reach + class_top[static_cast<std::size_t>(c)];
    for (long v = new_reach; v >= 0; --v) {
      double best = dp[static_cast<std::size_t>(v)];
      std::int16_t pick = -1;
      for (int j = 0; j < static_cast<int>(items.size()); ++j) {
        long sv = static_cast<long>(std::floor(items[static_cast<std::size_t>(j)].value / unit));
        if (sv > v) continue;
        double w = dp[static_cast<std::size_t>(v - sv)] + items[static_cast<std::size_t>(j)].weight;
        if (w < best) {
          best = w;
          pick = static_cast<std::int16_t>(j);
        }
      }
      if (pick >= 0) {
        dp[static_cast<std::size_t>(v)] = best;
        row[v] = pick;
      }
    }
    reach = new_reach;
  }

  long best_v = 0;
  for (long v = v_total; v >= 1; --v) {
    if (dp[static_cast<std::size_t>(v)] <= mckp.capacity) {
      best_v = v;
      break;
    }
  }

  // Backtrack through the per-class choice rows.
  long v = best_v;
  for (int c = m - 1; c >= 0; --c) {
    const std::int16_t* row =
        &choice[static_cast<std::size_t>(c) * static_cast<std::size_t>(v_total + 1)];
    std::int16_t pick = row[v];
    if (pick < 0) continue;
    const Kept& k = kept[static_cast<std::size_t>(c)];
    const MckpItem& it = k.items[static_cast<std::size_t>(pick)];
    sel.chosen[static_cast<std::size_t>(k.cls)] = k.orig[static_cast<std::size_t>(pick)];
    sel.value += it.value;
    sel.weight += it.weight;
    v -= static_cast<long>(std::floor(it.value / unit));
  }
  return sel;
}

namespace {

/// One guess of (no-purchase probability, maximum purchase probability).
struct PairTask {
  double x0;
  double y;
  double lp_bound = 0.0;      // fractional fill upper bound on the pair's MCKP
  double greedy_value = 0.0;  // feasible value found by integral greedy
  std::vector<double> greedy_x;
};

}  // namespace

UpperBoundSolution solve_upper_bound_fptas(const DynamicInstance& dyn, double eps,
                                           unsigned threads) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("solve_upper_bound_fptas: eps must be in (0, 1/2)");

  const Instance& inst = dyn.base();
  const int n = inst.n();
  const double T = static_cast<double>(dyn.T());
  const double alpha = inst.alpha();
  const double vmax = inst.max_weight();
  const double vmin = inst.min_weight();

  const double delta = std::pow(1.0 - eps, -0.25) - 1.0;
  const double log1d = std::log1p(delta);
  const double base0 = 1.0 / (1.0 + n * vmax);

  auto geometric_grid = [&](double lo, double hi, double first) {
    std::vector<double> grid;
    double p = first;
    while (p < hi) {
      grid.push_back(std::max(p, lo));
      p *= 1.0 + delta;
    }
    grid.push_back(hi);  // endpoint included exactly
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
  };

  const std::vector<double> grid0 = geometric_grid(base0, 1.0, base0);
  double cmin_over_t = static_cast<double>(dyn.min_inventory()) / T;
  const double y_min = std::min(cmin_over_t, vmin / (1.0 + n * vmax));
  const std::vector<double> gridy = geometric_grid(y_min / (1.0 + delta), 1.0, y_min / (1.0 + delta));

  std::vector<double> cap_ct(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    cap_ct[static_cast<std::size_t>(i)] = static_cast<double>(dyn.inventory(i)) / T;

  std::vector<int> rev_order(static_cast<std::size_t>(n));
  std::iota(rev_order.begin(), rev_order.end(), 0);
  std::sort(rev_order.begin(), rev_order.end(), [&](int a, int b) {
    if (inst.revenue(a) != inst.revenue(b)) return inst.revenue(a) > inst.revenue(b);
    return a < b;
  });

  // Largest per-class grid point at or below `limit`.
  auto grid_point_below = [&](double y, double limit) {
    double lo = alpha * y;
    if (limit < lo) return -1.0;
    long ell = static_cast<long>(std::floor(std::log(limit / lo) / log1d));
    double p = lo * std::pow(1.0 + delta, static_cast<double>(ell));
    while (p > limit && ell > 0) {
      --ell;
      p = lo * std::pow(1.0 + delta, static_cast<double>(ell));
    }
    return p <= limit ? p : -1.0;
  };

  std::vector<PairTask> pairs;
  pairs.reserve(grid0.size() * gridy.size());
  for (double x0 : grid0) {
    for (double y : gridy) {
      PairTask task;
      task.x0 = x0;
      task.y = y;
      double cap = 1.0 - x0;
      if (cap < 0.0) cap = 0.0;
      // Fractional fill bound: every item of class i carries value r_i per
      // unit weight, so the LP optimum fills classes by revenue.
      double remaining = cap;
      task.greedy_x.assign(static_cast<std::size_t>(n), 0.0);
      for (int i : rev_order) {
        double ui = std::min({y, inst.weight(i) * x0, cap_ct[static_cast<std::size_t>(i)]});
        if (alpha * y > ui) continue;  // product cannot be offered at this guess
        double take = std::min(ui, remaining);
        if (take <= 0.0) break;
        task.lp_bound += inst.revenue(i) * take;
        remaining -= take;
      }
      // Integral greedy: same order, largest grid point fitting the leftover.
      remaining = cap;
      for (int i : rev_order) {
        double ui = std::min({y, inst.weight(i) * x0, cap_ct[static_cast<std::size_t>(i)]});
        if (alpha * y > ui) continue;
        double limit = std::min(ui, remaining);
        double pt = limit >= ui ? ui : grid_point_below(y, limit);
        if (pt < 0.0) continue;
        task.greedy_x[static_cast<std::size_t>(i)] = pt;
        task.greedy_value += inst.revenue(i) * pt;
        remaining -= pt;
      }
      pairs.push_back(std::move(task));
    }
  }

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pairs[a].lp_bound != pairs[b].lp_bound) return pairs[a].lp_bound > pairs[b].lp_bound;
    return a < b;
  });

  double best_value = -1.0;
  std::vector<double> best_x(static_cast<std::size_t>(n), 0.0);
  auto consider = [&](double value, const std::vector<double>& x) {
    if (value > best_value) {
      best_value = value;
      best_x = x;
    }
  };
  for (std::size_t idx : order) consider(pairs[idx].greedy_value, pairs[idx].greedy_x);

  // A pair whose fractional bound is already within factor 1/(1+delta) of the
  // incumbent cannot improve the final guarantee: the knapsack is solved to
  // 1/(1+delta), so skipping it keeps value >= MCKP_OPT(pair) / (1+delta).
  const double eps_mckp = delta / (1.0 + delta);
  const std::size_t chunk = 256;
  long mckp_runs = 0;

  struct ChunkResult {
    double value = -1.0;
    std::vector<double> x;
  };

  for (std::size_t start = 0; start < order.size(); start += chunk) {
    if (best_value >= pairs[order[start]].lp_bound / (1.0 + delta)) break;
    std::size_t end = std::min(order.size(), start + chunk);
    double threshold = best_value * (1.0 + delta);  // snapshot for determinism

    std::vector<ChunkResult> results(end - start);
    parallel_for(end - start, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        const PairTask& task = pairs[order[start + k]];
        if (task.lp_bound <= threshold) continue;
        double x0 = task.x0, y = task.y;

        MckpInstance mckp;
        mckp.capacity = 1.0 - x0;
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
          double ui = std::min({y, inst.weight(i) * x0, cap_ct[static_cast<std::size_t>(i)]});
          double lo_pt = alpha * y;
          if (lo_pt > ui) continue;
          std::vector<MckpItem> items;
          double p = lo_pt;
          while (p < ui * (1.0 - 1e-12)) {
            items.push_back({inst.revenue(i) * p, p});
            p *= 1.0 + delta;
          }
          items.push_back({inst.revenue(i) * ui, ui});
          members.push_back(i);
          mckp.classes.push_back(std::move(items));
        }
        if (mckp.classes.empty()) continue;

        MckpSelection msel = solve_mckp(mckp, eps_mckp);
        ChunkResult& out = results[k];
        out.value = msel.value;
        out.x.assign(static_cast<std::size_t>(n), 0.0);
        for (std::size_t c = 0; c < members.size(); ++c) {
          int pick = msel.chosen[c];
          if (pick < 0) continue;
          out.x[static_cast<std::size_t>(members[c])] =
              mckp.classes[c][static_cast<std::size_t>(pick)].weight;
        }
      }
    });

    for (std::size_t k = 0; k < results.size(); ++k) {
      if (results[k].value >= 0.0) {
        ++mckp_runs;
        consider(results[k].value, results[k].x);
      }
    }
  }

  UpperBoundSolution sol = make_solution(dyn, std::move(best_x), eps);
  sol.stats.grid0_size = static_cast<int>(grid0.size());
  sol.stats.gridy_size = static_cast<int>(gridy.size());
  sol.stats.pairs = static_cast<long>(pairs.size());
  sol.stats.mckp_runs = mckp_runs;
  return sol;
}

UpperBoundSolution solve_upper_bound_alpha1(const DynamicInstance& dyn) {
  const Instance& inst = dyn.base();
  if (std::abs(inst.alpha() - 1.0) > 1e-12)
    throw std::invalid_argument("solve_upper_bound_alpha1: requires alpha = 1");

  const int n = inst.n();
  const double T = static_cast<double>(dyn.T());

  std::vector<double> cands;
  for (int i = 0; i < n; ++i) cands.push_back(static_cast<double>(dyn.inventory(i)) / T);
  for (int i = 0; i < n; ++i) {
    double vi = inst.weight(i);
    for (int l = 1; l <= n; ++l) cands.push_back(vi / (1.0 + l * vi));
  }
  cands = distinct_sorted(std::move(cands));

  std::vector<int> rev_order(static_cast<std::size_t>(n));
  std::iota(rev_order.begin(), rev_order.end(), 0);
  std::sort(rev_order.begin(), rev_order.end(), [&](int a, int b) {
    if (inst.revenue(a) != inst.revenue(b)) return inst.revenue(a) > inst.revenue(b);
    return a < b;
  });

  double best_value = 0.0;
  std::vector<double> best_x(static_cast<std::size_t>(n), 0.0);
  for (double xbar : cands) {
    if (!(xbar > 0.0)) continue;
    for (int k = 1; k <= n; ++k) {
      double x0 = 1.0 - k * xbar;
      if (x0 <= 1e-12) break;
      double weight_floor = xbar / x0;
      double value = 0.0;
      int taken = 0;
      std::vector<int> members;
      for (int i : rev_order) {
        double slack = 1e-12 * std::max(1.0, weight_floor);
        if (static_cast<double>(dyn.inventory(i)) + 1e-9 < T * xbar) continue;
        if (inst.weight(i) + slack < weight_floor) continue;
        members.push_back(i);
        value += inst.revenue(i) * xbar;
        if (++taken == k) break;
      }
      if (taken < k) continue;  // fewer than k feasible products at this level
      if (value > best_value) {
        best_value = value;
        std::fill(best_x.begin(), best_x.end(), 0.0);
        for (int i : members) best_x[static_cast<std::size_t>(i)] = xbar;
      }
    }
  }
  return make_solution(dyn, std::move(best_x), 0.0);
}

UpperBoundSolution solve_upper_bound_exact(const DynamicInstance& dyn, int n_max,
                                           BalanceEncoding encoding) {
  const Instance& inst = dyn.base();
  const int n = inst.n();
  if (n > n_max)
    throw std::invalid_argument("solve_upper_bound_exact: instance exceeds n_max");

  const double T = static_cast<double>(dyn.T());
  const double alpha = inst.alpha();

  LpSolver solver;
  double best_value = 0.0;  // empty support baseline
  std::vector<double> best_x(static_cast<std::size_t>(n), 0.0);

  std::vector<int> members;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    members.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) members.push_back(i);
    const int k = static_cast<int>(members.size());

    // Variables: x0, then x_i for i in the support, plus the auxiliary
    // max-level variable under the AuxVariable encoding.
    const bool aux = encoding == BalanceEncoding::AuxVariable;
    LinearProgram lp;
    lp.num_vars = 1 + k + (aux ? 1 : 0);
    lp.objective.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
    lp.lower.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
    lp.upper.assign(static_cast<std::size_t>(lp.num_vars), kLpInfinity);
    lp.upper[0] = 1.0;
    for (int j = 0; j < k; ++j) {
      int i = members[static_cast<std::size_t>(j)];
      lp.objective[static_cast<std::size_t>(1 + j)] = inst.revenue(i);
      lp.upper[static_cast<std::size_t>(1 + j)] =
          std::min(1.0, static_cast<double>(dyn.inventory(i)) / T);
    }
    if (aux) lp.upper[static_cast<std::size_t>(1 + k)] = 1.0;

    std::vector<double> row(static_cast<std::size_t>(lp.num_vars), 0.0);
    row[0] = 1.0;
    for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(1 + j)] = 1.0;
    lp.add_row(row, LinearProgram::Rel::Eq, 1.0);

    for (int j = 0; j < k; ++j) {
      int i = members[static_cast<std::size_t>(j)];
      std::fill(row.begin(), row.end(), 0.0);
      row[static_cast<std::size_t>(1 + j)] = 1.0;
      row[0] = -inst.weight(i);
      lp.add_row(row, LinearProgram::Rel::Le, 0.0);
    }

    if (aux) {
      for (int j = 0; j < k; ++j) {
        std::fill(row.begin(), row.end(), 0.0);
        row[static_cast<std::size_t>(1 + j)] = 1.0;
        row[static_cast<std::size_t>(1 + k)] = -alpha;
        lp.add_row(row, LinearProgram::Rel::Ge, 0.0);
        row[static_cast<std::size_t>(1 + j)] = 1.0;
        row[static_cast<std::size_t>(1 + k)] = -1.0;
        lp.add_row(row, LinearProgram::Rel::Le, 0.0);
      }
    } else {
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a == b) continue;
          std::fill(row.begin(), row.end(), 0.0);
          row[static_cast<std::size_t>(1 + a)] = 1.0;
          row[static_cast<std::size_t>(1 + b)] = -alpha;
          lp.add_row(row, LinearProgram::Rel::Ge, 0.0);
        }
      }
    }

    LpSolution lps = solver.solve(lp);
    if (lps.status != LpStatus::Optimal) continue;
    if (lps.objective > best_value) {
      best_value = lps.objective;
      std::fill(best_x.begin(), best_x.end(), 0.0);
      for (int j = 0; j < k; ++j) {
        best_x[static_cast<std::size_t>(members[static_cast<std::size_t>(j)])] =
            std::max(0.0, lps.x[static_cast<std::size_t>(1 + j)]);
      }
    }
  }
  return make_solution(dyn, std::move(best_x), 0.0);
}

}  // namespace fairassort
