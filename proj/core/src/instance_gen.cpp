#include "fairassort/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fairassort/rng.hpp"

namespace fairassort {

namespace {

/// Revenue-ordered scan, exact for unconstrained MNL.
std::vector<int> unconstrained_optimum(const std::vector<double>& r, const std::vector<double>& v) {
  const int n = static_cast<int>(r.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (r[static_cast<std::size_t>(a)] != r[static_cast<std::size_t>(b)])
      return r[static_cast<std::size_t>(a)] > r[static_cast<std::size_t>(b)];
    return a < b;
  });
  double num = 0.0, denom = 1.0, best_value = 0.0;
  std::size_t best_len = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    int i = order[k];
    num += r[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    denom += v[static_cast<std::size_t>(i)];
    if (num / denom > best_value) {
      best_value = num / denom;
      best_len = k + 1;
    }
  }
  std::vector<int> best(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_len));
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace

DynamicInstance generate(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("generate: n must be positive");
  if (cfg.T < 1) throw std::invalid_argument("generate: T must be positive");
  if (!(cfg.p0 > 0.0 && cfg.p0 < 1.0)) throw std::invalid_argument("generate: P0 must be in (0, 1)");
  if (!(cfg.gamma > 0.0)) throw std::invalid_argument("generate: gamma must be positive");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw std::invalid_argument("generate: alpha must be in (0, 1]");

  const int n = cfg.n;
  CounterRng rev_rng = CounterRng::stream(cfg.seed, 0);
  CounterRng weight_rng = CounterRng::stream(cfg.seed, 1);

  std::vector<double> r(static_cast<std::size_t>(n));
  for (auto& ri : r) {
    do {
      ri = rev_rng.next_double(0.0, 10.0);
    } while (ri <= 0.0);  // zero draws have probability zero; resampled anyway
  }

  std::vector<double> vt(static_cast<std::size_t>(n));
  double vt_sum = 0.0;
  for (auto& vi : vt) {
    vi = weight_rng.next_double(1.0, 10.0);
    vt_sum += vi;
  }
  double scale = (1.0 - cfg.p0) / cfg.p0;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = scale * vt[static_cast<std::size_t>(i)] / vt_sum;

  std::vector<int> s_star = unconstrained_optimum(r, v);
  double denom_star = 1.0;
  for (int i : s_star) denom_star += v[static_cast<std::size_t>(i)];
  double denom_all = 1.0;
  for (double vi : v) denom_all += vi;

  std::vector<bool> in_star(static_cast<std::size_t>(n), false);
  for (int i : s_star) in_star[static_cast<std::size_t>(i)] = true;

  const double T = static_cast<double>(cfg.T);
  std::vector<long> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double vi = v[static_cast<std::size_t>(i)];
    double demand = (in_star[static_cast<std::size_t>(i)] ? 0.75 * T * vi / denom_star : 0.0) +
                    0.25 * T * vi / denom_all;
    c[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil(cfg.gamma * demand));
    c[static_cast<std::size_t>(i)] = std::max<long>(1, c[static_cast<std::size_t>(i)]);
  }

  return DynamicInstance(Instance(std::move(r), std::move(v), cfg.alpha), cfg.T, std::move(c));
}

}  // namespace fairassort
