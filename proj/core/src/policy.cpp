#include "fairassort/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fairassort/lp.hpp"

namespace fairassort {

namespace {

/// log of the Binomial(T, p) pmf at k.
double log_pmf(long T, double p, long k) {
  double lt = static_cast<double>(T), lk = static_cast<double>(k);
  return std::lgamma(lt + 1.0) - std::lgamma(lk + 1.0) - std::lgamma(lt - lk + 1.0) +
         lk * std::log(p) + (lt - lk) * std::log1p(-p);
}

/// E[(Y - c)^+] for Y ~ Binomial(T, p), summed upward from k = c + 1. Valid
/// when the upper tail carries little mass relative to T p (i.e. Tp <= c).
double upper_excess(long T, double p, long c) {
  if (c >= T) return 0.0;
  double ratio = p / (1.0 - p);
  double pmf = std::exp(log_pmf(T, p, c + 1));
  double sum = 0.0;
  for (long k = c + 1; k <= T; ++k) {
    sum += static_cast<double>(k - c) * pmf;
    if (k < T) {
      pmf *= ratio * static_cast<double>(T - k) / static_cast<double>(k + 1);
      if (pmf * static_cast<double>(T - c) < sum * 1e-18 && pmf < 1e-300) break;
      if (sum > 0.0 && pmf * static_cast<double>(T) < sum * 1e-18) break;
    }
  }
  return sum;
}

/// E[(c - Y)^+] for Y ~ Binomial(T, p), summed downward from k = c - 1.
/// Valid when the lower tail carries little mass (i.e. Tp >= c).
double lower_excess(long T, double p, long c) {
  double ratio = (1.0 - p) / p;
  double pmf = std::exp(log_pmf(T, p, c - 1));
  double sum = 0.0;
  for (long k = c - 1; k >= 0; --k) {
    sum += static_cast<double>(c - k) * pmf;
    if (k > 0) {
      pmf *= ratio * static_cast<double>(k) / static_cast<double>(T - k + 1);
      if (sum > 0.0 && pmf * static_cast<double>(c) < sum * 1e-18) break;
    }
  }
  return sum;
}

}  // namespace

double capped_mean_sales(long T, double p, long c) {
  if (T < 1) throw std::invalid_argument("capped_mean_sales: T must be positive");
  if (c < 0) throw std::invalid_argument("capped_mean_sales: c must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("capped_mean_sales: p must lie in [0, 1]");
  if (c == 0 || p == 0.0) return 0.0;
  double mean = static_cast<double>(T) * p;
  if (c >= T) return mean;  // the cap never binds
  if (p == 1.0) return static_cast<double>(c);
  // G = Tp - E[(Y-c)^+] = c - E[(c-Y)^+]; pick the form whose correction is
  // a tail sum, accumulated in ascending magnitude away from the mode.
  if (mean <= static_cast<double>(c)) return mean - upper_excess(T, p, c);
  return static_cast<double>(c) - lower_excess(T, p, c);
}

double CappedSalesCurve::operator()(double p, long c) const {
  std::uint64_t bits;
  std::memcpy(&bits, &p, sizeof(bits));
  std::uint64_t key = bits ^ (static_cast<std::uint64_t>(c) * 0x9e3779b97f4a7c15ULL);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  double g = capped_mean_sales(T_, p, c);
  cache_.emplace(key, g);
  return g;
}

int bisection_iteration_cap(const DynamicInstance& dyn, double eps2) {
  const Instance& inst = dyn.base();
  double vmax = inst.max_weight(), vmin = inst.min_weight();
  double bound = std::log2(static_cast<double>(dyn.T())) + std::log2(1.0 / eps2) +
                 std::log2((1.0 + inst.n() * vmax) / (inst.alpha() * vmin)) + 2.0;
  return static_cast<int>(std::ceil(bound));
}

PolicySpec calibrate_policy(const DynamicInstance& dyn, const UpperBoundSolution& ub,
                            double eps2) {
  const Instance& inst = dyn.base();
  const int n = inst.n();
  const double alpha = inst.alpha();

  PolicySpec spec;
  spec.targets.assign(static_cast<std::size_t>(n), 0.0);
  spec.g_values.assign(static_cast<std::size_t>(n), 0.0);
  spec.upper_bound_objective = ub.objective;
  spec.support = ub.xs.support();
  spec.epsilon2 = eps2;

  CappedSalesCurve g(dyn.T());

  if (std::abs(alpha - 1.0) <= 1e-12) {
    // Equal-share policy: keep the targets and cap realized sales at the
    // smallest support inventory, which equalizes all expected sales.
    spec.kind = PolicyKind::CappedEqualShare;
    long cap = 0;
    for (int i : spec.support) {
      cap = cap == 0 ? dyn.inventory(i) : std::min(cap, dyn.inventory(i));
    }
    spec.cap = cap;
    for (int i : spec.support) {
      std::size_t si = static_cast<std::size_t>(i);
      spec.targets[si] = ub.xs.x[si];
      spec.g_values[si] = g(ub.xs.x[si], cap);
    }
    double gmin = 0.0;
    for (int i : spec.support)
      gmin = gmin == 0.0 ? spec.g_values[static_cast<std::size_t>(i)]
                         : std::min(gmin, spec.g_values[static_cast<std::size_t>(i)]);
    spec.g_min = gmin;
    return spec;
  }

  if (!(eps2 > 0.0 && eps2 <= 1.0 - alpha))
    throw std::invalid_argument("calibrate_policy: eps2 must be in (0, 1 - alpha]");

  spec.kind = PolicyKind::FixedTarget;
  if (spec.support.empty()) return spec;

  double g_min = kLpInfinity;
  for (int i : spec.support) {
    std::size_t si = static_cast<std::size_t>(i);
    g_min = std::min(g_min, g(ub.xs.x[si], dyn.inventory(i)));
  }
  spec.g_min = g_min;
  const double target = g_min / alpha;
  const int iter_cap = bisection_iteration_cap(dyn, eps2);

  for (int i : spec.support) {
    std::size_t si = static_cast<std::size_t>(i);
    double xt = ub.xs.x[si];
    long ci = dyn.inventory(i);
    double gi = g(xt, ci);
    if (gi <= target) {
      spec.targets[si] = xt;
      spec.g_values[si] = gi;
      continue;
    }
    // G is monotone in p: bisect on [0, x_tilde] keeping G(lo) <= target,
    // stop once G(lo) certifies the (1 - eps2) band, return the left
    // endpoint after the iteration budget otherwise.
    double lo = 0.0, hi = xt;
    int it = 0;
    while (it < iter_cap) {
      if (g(lo, ci) >= (1.0 - eps2) * target) break;
      double mid = 0.5 * (lo + hi);
      if (g(mid, ci) <= target) lo = mid;
      else hi = mid;
      ++it;
    }
    spec.max_bisection_iterations = std::max(spec.max_bisection_iterations, it);
    double glo = g(lo, ci);
    if (glo < (1.0 - eps2) * target * (1.0 - 1e-9)) {
      throw std::runtime_error("calibrate_policy: bisection iteration cap exceeded");
    }
    spec.targets[si] = lo;
    spec.g_values[si] = glo;
  }
  return spec;
}

PolicySpec build_policy(const DynamicInstance& dyn, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("build_policy: eps must be in (0, 1)");
  const double alpha = dyn.base().alpha();
  if (std::abs(alpha - 1.0) <= 1e-12) {
    return calibrate_policy(dyn, solve_upper_bound_alpha1(dyn), eps);
  }
  UpperBoundSolution ub = solve_upper_bound_fptas(dyn, std::min(eps / 2.0, 0.499));
  double eps2 = std::min(eps / 2.0, 1.0 - alpha);
  return calibrate_policy(dyn, ub, eps2);
}

std::vector<double> policy_step(const PolicySpec& spec, const std::vector<long>& remaining,
                                const std::vector<long>& cumulative_sales, long /*t*/) {
  if (spec.kind == PolicyKind::Heuristic1 || spec.kind == PolicyKind::Heuristic2)
    throw std::logic_error("policy_step: heuristic policies are driven by the simulator");
  const std::size_t n = spec.targets.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.targets[i] <= 0.0) continue;
    bool available = spec.kind == PolicyKind::CappedEqualShare
                         ? cumulative_sales[i] < spec.cap
                         : remaining[i] > 0;
    if (available) p[i] = spec.targets[i];
  }
  return p;
}

namespace {

LpSolution solve_resolve_lp(const DynamicInstance& dyn, const std::vector<int>& support,
                            const std::vector<double>& cum_targets,
                            const std::vector<long>& realized_sales, long t,
                            double balance_slack) {
  const Instance& inst = dyn.base();
  const int k = static_cast<int>(support.size());
  const double horizon = static_cast<double>(dyn.T() - t + 1);
  const double alpha = inst.alpha();

  // Variables: x0, then x_i for i in the support.
  LinearProgram lp;
  lp.num_vars = 1 + k;
  lp.objective.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
  lp.lower.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
  lp.upper.assign(static_cast<std::size_t>(lp.num_vars), 1.0);
  for (int j = 0; j < k; ++j)
    lp.objective[static_cast<std::size_t>(1 + j)] = inst.revenue(support[static_cast<std::size_t>(j)]);

  std::vector<double> row(static_cast<std::size_t>(lp.num_vars), 0.0);
  row[0] = 1.0;
  for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(1 + j)] = 1.0;
  lp.add_row(row, LinearProgram::Rel::Eq, 1.0);

  for (int j = 0; j < k; ++j) {
    int i = support[static_cast<std::size_t>(j)];
    std::fill(row.begin(), row.end(), 0.0);
    row[static_cast<std::size_t>(1 + j)] = 1.0;
    row[0] = -inst.weight(i);
    lp.add_row(row, LinearProgram::Rel::Le, 0.0);

    double remaining = static_cast<double>(dyn.inventory(i) - realized_sales[static_cast<std::size_t>(i)]);
    std::fill(row.begin(), row.end(), 0.0);
    row[static_cast<std::size_t>(1 + j)] = horizon;
    lp.add_row(row, LinearProgram::Rel::Le, std::max(0.0, remaining));
  }

  // Cumulative pairwise balancing of targets over the whole horizon. The
  // rows get a small relative slack: earlier resolves hold only up to the
  // solver's feasibility tolerance, and the drift accumulates in the sums.
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      int ia = support[static_cast<std::size_t>(a)];
      int ib = support[static_cast<std::size_t>(b)];
      std::fill(row.begin(), row.end(), 0.0);
      row[static_cast<std::size_t>(1 + a)] = horizon;
      row[static_cast<std::size_t>(1 + b)] = -alpha * horizon;
      double rhs = alpha * cum_targets[static_cast<std::size_t>(ib)] -
                   cum_targets[static_cast<std::size_t>(ia)];
      lp.add_row(row, LinearProgram::Rel::Ge, rhs - balance_slack * std::max(1.0, std::abs(rhs)));
    }
  }

  LpSolver solver;
  return solver.solve(lp);
}

}  // namespace

std::vector<double> heuristic_resolve(const DynamicInstance& dyn,
                                      const std::vector<int>& support,
                                      const std::vector<double>& cum_targets,
                                      const std::vector<long>& realized_sales, long t) {
  if (t < 1 || t > dyn.T()) throw std::invalid_argument("heuristic_resolve: t out of range");
  const int n = dyn.base().n();
  const int k = static_cast<int>(support.size());

  LpSolution sol = solve_resolve_lp(dyn, support, cum_targets, realized_sales, t, 1e-7);
  if (sol.status != LpStatus::Optimal) {
    sol = solve_resolve_lp(dyn, support, cum_targets, realized_sales, t, 1e-4);
  }
  if (sol.status != LpStatus::Optimal) {
    // The all-zero point is feasible for the exact program; anything else
    // indicates corrupted state.
    throw std::logic_error("heuristic_resolve: resolving program reported infeasible");
  }
  std::vector<double> targets(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < k; ++j) {
    targets[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])] =
        std::max(0.0, sol.x[static_cast<std::size_t>(1 + j)]);
  }
  return targets;
}

}  // namespace fairassort
