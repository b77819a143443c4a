#pragma once

#include <vector>

#include "fairassort/instance_gen.hpp"
#include "fairassort/model.hpp"
#include "fairassort/rng.hpp"

namespace fatest {

using namespace fairassort;

inline Instance random_instance(CounterRng& rng, int n, double alpha, double r_hi = 10.0,
                                double v_lo = 0.1, double v_hi = 3.0) {
  std::vector<double> r(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
  for (auto& ri : r) ri = rng.next_double(0.05, r_hi);
  for (auto& vi : v) vi = rng.next_double(v_lo, v_hi);
  return Instance(std::move(r), std::move(v), alpha);
}

inline DynamicInstance random_dynamic(CounterRng& rng, int n, double alpha, long t_max,
                                      double v_lo = 0.2, double v_hi = 2.5) {
  Instance inst = random_instance(rng, n, alpha, 10.0, v_lo, v_hi);
  long T = 5 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(t_max - 4)));
  std::vector<long> c(static_cast<std::size_t>(n));
  for (auto& ci : c) ci = 1 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(T)));
  return DynamicInstance(std::move(inst), T, std::move(c));
}

/// Feasible purchase probabilities (balancing not required): draw
/// w_i in [0, v_i] and normalize.
inline SalesVector random_feasible_sales(CounterRng& rng, const Instance& inst) {
  SalesVector xs;
  xs.x.resize(static_cast<std::size_t>(inst.n()));
  double w_sum = 0.0;
  std::vector<double> w(static_cast<std::size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) {
    w[static_cast<std::size_t>(i)] = rng.next_double(0.0, inst.weight(i));
    w_sum += w[static_cast<std::size_t>(i)];
  }
  xs.x0 = 1.0 / (1.0 + w_sum);
  for (int i = 0; i < inst.n(); ++i)
    xs.x[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * xs.x0;
  return xs;
}

/// The instance family whose optimal nested distribution randomizes over n
/// distinct assortments, together with its optimal purchase probabilities.
inline Instance chain_example_instance(int n, double alpha) {
  std::vector<double> r(static_cast<std::size_t>(n), 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  v[0] = alpha;
  for (int i = 2; i <= n; ++i)
    v[static_cast<std::size_t>(i - 1)] = 1.0 + i * alpha / (static_cast<double>(n) * n);
  return Instance(std::move(r), std::move(v), alpha);
}

inline SalesVector chain_example_sales(int n, double alpha) {
  SalesVector xs;
  double denom = static_cast<double>(n) + alpha;
  xs.x0 = 1.0 / denom;
  xs.x.assign(static_cast<std::size_t>(n), 1.0 / denom);
  xs.x[0] = alpha / denom;
  return xs;
}

/// The three-product threshold-sensitivity instance.
inline Instance sensitivity_instance(double eps, double alpha) {
  return Instance({7.0 / (9.0 * eps), 1.0, 1.0}, {eps, 1.0, 3.0}, alpha);
}

}  // namespace fatest
