#include "fairassort/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fairassort/parallel.hpp"
#include "fairassort/rng.hpp"

namespace fairassort {

namespace {

struct ReplicateResult {
  double revenue = 0.0;
  std::vector<long> sales;
  long balancing_violations = 0;
};

/// Per-trajectory driver of the resolving heuristics: targets start at the
/// upper-bound solution, are carried forward verbatim between resolves, and
/// are recomputed at scheduled periods (Heuristic 1) or after a stock-out.
class HeuristicState {
 public:
  HeuristicState(const DynamicInstance& dyn, const PolicySpec& spec)
      : dyn_(dyn),
        spec_(spec),
        targets_(spec.targets),
        cum_targets_(spec.targets.size(), 0.0),
        resolve_every_(static_cast<long>(std::ceil(std::sqrt(static_cast<double>(dyn.T()))))) {}

  const std::vector<double>& targets_for_period(long t, const std::vector<long>& sales,
                                                bool stockout_last_period) {
    bool scheduled = spec_.kind == PolicyKind::Heuristic1 && t % resolve_every_ == 0;
    if (t > 1 && (stockout_last_period || scheduled)) {
      targets_ = heuristic_resolve(dyn_, spec_.support, cum_targets_, sales, t);
    }
    return targets_;
  }

  /// Accumulates the period's targets and verifies the cumulative pairwise
  /// balancing invariant; returns the number of violations observed.
  long end_period() {
    double min_cum = kLpInfinityLocal, max_cum = 0.0;
    for (std::size_t i = 0; i < targets_.size(); ++i) cum_targets_[i] += targets_[i];
    for (int i : spec_.support) {
      double ci = cum_targets_[static_cast<std::size_t>(i)];
      min_cum = std::min(min_cum, ci);
      max_cum = std::max(max_cum, ci);
    }
    if (!spec_.support.empty() &&
        min_cum < dyn_.base().alpha() * max_cum - 1e-7 * std::max(1.0, max_cum)) {
      return 1;
    }
    return 0;
  }

 private:
  static constexpr double kLpInfinityLocal = 1e300;
  const DynamicInstance& dyn_;
  const PolicySpec& spec_;
  std::vector<double> targets_;
  std::vector<double> cum_targets_;
  long resolve_every_;
};

/// Draws the purchase outcome for one period; returns the product index or
/// kNoPurchase.
int draw_outcome(const Instance& inst, const std::vector<double>& p, SampleMode mode,
                 CounterRng& rng, const AssortmentDistribution* dist) {
  if (mode == SampleMode::DirectCategorical) {
    double u = rng.next_double();
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      acc += p[static_cast<std::size_t>(i)];
      if (u < acc) return i;
    }
    return kNoPurchase;
  }
  // Faithful mode: sample the offered assortment, then the MNL choice.
  double u = rng.next_double();
  double acc = 0.0;
  const std::vector<int>* offered = nullptr;
  for (const auto& entry : dist->entries) {
    acc += entry.probability;
    if (u < acc) {
      offered = &entry.assortment;
      break;
    }
  }
  if (offered == nullptr) offered = &dist->entries.back().assortment;
  double denom = 1.0;
  for (int i : *offered) denom += inst.weight(i);
  double u2 = rng.next_double();
  double acc2 = 0.0;
  for (int i : *offered) {
    acc2 += inst.weight(i) / denom;
    if (u2 < acc2) return i;
  }
  return kNoPurchase;
}

ReplicateResult run_replicate(const DynamicInstance& dyn, const PolicySpec& spec,
                              const SimulateOptions& options, long replicate) {
  const Instance& inst = dyn.base();
  const int n = inst.n();
  CounterRng rng = CounterRng::stream(options.seed, static_cast<std::uint64_t>(replicate));

  ReplicateResult result;
  result.sales.assign(static_cast<std::size_t>(n), 0);
  std::vector<long> remaining = dyn.inventories();

  const bool heuristic =
      spec.kind == PolicyKind::Heuristic1 || spec.kind == PolicyKind::Heuristic2;
  HeuristicState heur(dyn, spec);

  bool stockout_last = false;
  std::vector<double> p;
  AssortmentDistribution dist;
  bool dist_valid = false;

  for (long t = 1; t <= dyn.T(); ++t) {
    bool targets_changed = false;
    if (heuristic) {
      const std::vector<double>& tgt = heur.targets_for_period(t, result.sales, stockout_last);
      targets_changed = (t == 1) || tgt != p;
      p = tgt;
    } else {
      std::vector<double> np = policy_step(spec, remaining, result.sales, t);
      targets_changed = (t == 1) || np != p;
      p = std::move(np);
    }
    stockout_last = false;

    if (options.mode == SampleMode::SampleAssortment && (targets_changed || !dist_valid)) {
      SalesVector xs;
      xs.x = p;
      xs.x0 = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
      dist = sales_to_distribution(inst, xs, 1e-6);
      dist_valid = true;
    }

    int outcome = draw_outcome(inst, p, options.mode, rng, dist_valid ? &dist : nullptr);
    if (outcome != kNoPurchase) {
      std::size_t oi = static_cast<std::size_t>(outcome);
      if (remaining[oi] <= 0) {
        throw std::logic_error("simulate: sale of a product with no remaining inventory");
      }
      --remaining[oi];
      ++result.sales[oi];
      result.revenue += inst.revenue(outcome);
      if (remaining[oi] == 0) stockout_last = true;
    }
    if (heuristic) result.balancing_violations += heur.end_period();
  }
  return result;
}

}  // namespace

SimulationReport simulate(const DynamicInstance& dyn, const PolicySpec& spec,
                          const SimulateOptions& options) {
  if (options.replicates < 1) throw std::invalid_argument("simulate: need at least one replicate");
  const int n = dyn.base().n();
  const long R = options.replicates;

  std::vector<ReplicateResult> results(static_cast<std::size_t>(R));
  parallel_for(static_cast<std::size_t>(R), options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t rep = lo; rep < hi; ++rep) {
      results[rep] = run_replicate(dyn, spec, options, static_cast<long>(rep));
    }
  });

  SimulationReport report;
  report.replicates = R;
  report.mean_sales.assign(static_cast<std::size_t>(n), 0.0);

  double rev_sum = 0.0, rev_sq = 0.0;
  std::vector<double> sales_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> cross(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (const auto& res : results) {
    rev_sum += res.revenue;
    rev_sq += res.revenue * res.revenue;
    report.balancing_violations += res.balancing_violations;
    for (int i = 0; i < n; ++i) {
      double si = static_cast<double>(res.sales[static_cast<std::size_t>(i)]);
      sales_sum[static_cast<std::size_t>(i)] += si;
      for (int j = 0; j <= i; ++j) {
        cross[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] +=
            si * static_cast<double>(res.sales[static_cast<std::size_t>(j)]);
      }
    }
  }

  double rr = static_cast<double>(R);
  report.mean_revenue = rev_sum / rr;
  double rev_var = std::max(0.0, (rev_sq - rev_sum * rev_sum / rr) / std::max(1.0, rr - 1.0));
  report.se_revenue = std::sqrt(rev_var / rr);
  for (int i = 0; i < n; ++i)
    report.mean_sales[static_cast<std::size_t>(i)] = sales_sum[static_cast<std::size_t>(i)] / rr;

  // Ratio of minimum to maximum nonzero mean sales, with a delta-method
  // standard error from the replicate covariance of the two extremes.
  int imin = -1, imax = -1;
  for (int i = 0; i < n; ++i) {
    double mi = report.mean_sales[static_cast<std::size_t>(i)];
    if (mi <= 0.0) continue;
    if (imin < 0 || mi < report.mean_sales[static_cast<std::size_t>(imin)]) imin = i;
    if (imax < 0 || mi > report.mean_sales[static_cast<std::size_t>(imax)]) imax = i;
  }
  if (imin >= 0 && imax >= 0) {
    double m1 = report.mean_sales[static_cast<std::size_t>(imin)];
    double m2 = report.mean_sales[static_cast<std::size_t>(imax)];
    report.minmax_ratio = m1 / m2;
    auto cov = [&](int a, int b) {
      int hi = std::max(a, b), lo = std::min(a, b);
      double cab = cross[static_cast<std::size_t>(hi) * n + static_cast<std::size_t>(lo)];
      double ma = sales_sum[static_cast<std::size_t>(a)] / rr;
      double mb = sales_sum[static_cast<std::size_t>(b)] / rr;
      return (cab / rr - ma * mb) * rr / std::max(1.0, rr - 1.0);
    };
    double v1 = cov(imin, imin), v2 = cov(imax, imax), c12 = cov(imin, imax);
    double rel = v1 / (m1 * m1) + v2 / (m2 * m2) - 2.0 * c12 / (m1 * m2);
    report.minmax_ratio_se = report.minmax_ratio * std::sqrt(std::max(0.0, rel) / rr);
  }

  double ub = std::isnan(options.ub_objective) ? spec.upper_bound_objective : options.ub_objective;
  report.normalized_revenue = ub > 0.0 ? report.mean_revenue / ub : 0.0;

  if (options.keep_trajectories) {
    report.replicate_revenue.reserve(static_cast<std::size_t>(R));
    report.replicate_sales.reserve(static_cast<std::size_t>(R));
    for (auto& res : results) {
      report.replicate_revenue.push_back(res.revenue);
      report.replicate_sales.push_back(std::move(res.sales));
    }
  }
  return report;
}

SimulationReport simulate(const DynamicInstance& dyn, const PolicySpec& spec, long replicates,
                          std::uint64_t seed, SampleMode mode) {
  SimulateOptions options;
  options.replicates = replicates;
  options.seed = seed;
  options.mode = mode;
  return simulate(dyn, spec, options);
}

BalanceAudit audit_balancing(const SimulationReport& report, double alpha, double tol) {
  BalanceAudit audit;
  if (tol < 0.0) tol = 3.0 * report.minmax_ratio_se;
  audit.ratio = report.minmax_ratio;
  audit.threshold = alpha - tol;
  audit.margin = audit.ratio - audit.threshold;
  audit.pass = audit.margin >= 0.0;
  return audit;
}

}  // namespace fairassort
