#include "fairassort/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairassort {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double rel_excess(double value, double bound, double scale) {
  return (value - bound) / std::max(1.0, scale);
}

}  // namespace

Instance::Instance(std::vector<double> revenues, std::vector<double> weights, double alpha)
    : r_(std::move(revenues)), v_(std::move(weights)), alpha_(alpha) {
  require(!r_.empty(), "Instance: need at least one product");
  require(r_.size() == v_.size(), "Instance: revenue/weight size mismatch");
  require(alpha_ > 0.0 && alpha_ <= 1.0, "Instance: alpha must be in (0, 1]");
  for (double r : r_) require(std::isfinite(r) && r > 0.0, "Instance: revenues must be positive");
  for (double v : v_) require(std::isfinite(v) && v > 0.0, "Instance: weights must be positive");
}

double Instance::min_weight() const { return *std::min_element(v_.begin(), v_.end()); }
double Instance::max_weight() const { return *std::max_element(v_.begin(), v_.end()); }

double SalesVector::sum_purchases() const {
  return std::accumulate(x.begin(), x.end(), 0.0);
}

std::vector<int> SalesVector::support(double threshold) const {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (x[static_cast<std::size_t>(i)] > threshold) s.push_back(i);
  }
  return s;
}

DynamicInstance::DynamicInstance(Instance base, long horizon, std::vector<long> inventories)
    : base_(std::move(base)), T_(horizon), c_(std::move(inventories)) {
  require(T_ >= 1, "DynamicInstance: horizon must be at least 1");
  require(static_cast<int>(c_.size()) == base_.n(),
          "DynamicInstance: inventory vector size mismatch");
  for (long ci : c_) require(ci >= 1, "DynamicInstance: inventories must be at least 1");
}

long DynamicInstance::min_inventory() const {
  return *std::min_element(c_.begin(), c_.end());
}

double choice_prob(const Instance& inst, const std::vector<int>& S, int item) {
  double denom = 1.0;
  bool item_in_s = false;
  for (int j : S) {
    if (j < 0 || j >= inst.n()) throw std::out_of_range("choice_prob: product index out of range");
    denom += inst.weight(j);
    if (j == item) item_in_s = true;
  }
  if (item == kNoPurchase) return 1.0 / denom;
  if (item < 0 || item >= inst.n()) throw std::out_of_range("choice_prob: item index out of range");
  return item_in_s ? inst.weight(item) / denom : 0.0;
}

double expected_revenue(const Instance& inst, const std::vector<int>& S) {
  double num = 0.0, denom = 1.0;
  for (int j : S) {
    if (j < 0 || j >= inst.n()) throw std::out_of_range("expected_revenue: index out of range");
    num += inst.revenue(j) * inst.weight(j);
    denom += inst.weight(j);
  }
  return num / denom;
}

std::vector<ConstraintViolation> check_bms_feasible(const Instance& inst,
                                                    const SalesVector& xs,
                                                    double tol) {
  std::vector<ConstraintViolation> out;
  const int n = inst.n();
  if (static_cast<int>(xs.x.size()) != n)
    throw std::invalid_argument("check_bms_feasible: dimension mismatch");

  double sum = xs.x0 + xs.sum_purchases();
  if (std::abs(sum - 1.0) > tol) {
    out.push_back({ConstraintViolation::Family::SumToOne, -1, std::abs(sum - 1.0)});
  }

  for (int i = 0; i < n; ++i) {
    double xi = xs.x[static_cast<std::size_t>(i)];
    double cap = inst.weight(i) * xs.x0;
    double lo_viol = rel_excess(-xi, 0.0, 1.0);
    double hi_viol = rel_excess(xi, cap, cap);
    double viol = std::max(lo_viol, hi_viol);
    if (viol > tol) {
      out.push_back({ConstraintViolation::Family::MnlValidity, i, viol});
    }
  }

  double max_x = 0.0;
  for (double xi : xs.x) max_x = std::max(max_x, xi);
  double floor = inst.alpha() * max_x;
  for (int i = 0; i < n; ++i) {
    double xi = xs.x[static_cast<std::size_t>(i)];
    if (xi <= tol * std::max(1.0, max_x)) continue;  // treated as zero
    double viol = rel_excess(floor, xi, floor);
    if (viol > tol) {
      out.push_back({ConstraintViolation::Family::Balancing, i, viol});
    }
  }
  return out;
}

AssortmentDistribution sales_to_distribution(const Instance& inst,
                                             const SalesVector& xs,
                                             double tol) {
  const int n = inst.n();
  if (static_cast<int>(xs.x.size()) != n)
    throw std::invalid_argument("sales_to_distribution: dimension mismatch");

  double sum = xs.x0 + xs.sum_purchases();
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument("sales_to_distribution: probabilities do not sum to one");
  for (int i = 0; i < n; ++i) {
    double xi = xs.x[static_cast<std::size_t>(i)];
    double cap = inst.weight(i) * xs.x0;
    if (xi < -tol || rel_excess(xi, cap, cap) > tol)
      throw std::invalid_argument("sales_to_distribution: x_i outside [0, v_i x0]");
  }

  // Rank by x_i / v_i descending, ties by index ascending; equal ratios
  // collapse adjacent terms to zero mass and are dropped below.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ratio(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    ratio[static_cast<std::size_t>(i)] =
        xs.x[static_cast<std::size_t>(i)] / inst.weight(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ratio[static_cast<std::size_t>(a)] > ratio[static_cast<std::size_t>(b)];
  });

  AssortmentDistribution dist;
  std::vector<int> prefix;
  double weight_sum = 1.0;

  // k = 0 term: the empty assortment with mass x0 - x_(1)/v_(1).
  {
    double next_ratio = n > 0 ? ratio[static_cast<std::size_t>(order[0])] : 0.0;
    double q = xs.x0 - next_ratio;
    if (q > 1e-15) {
      dist.entries.push_back({{}, q});
    }
  }
  for (int k = 0; k < n; ++k) {
    int i = order[static_cast<std::size_t>(k)];
    prefix.push_back(i);
    weight_sum += inst.weight(i);
    double next_ratio =
        (k + 1 < n) ? ratio[static_cast<std::size_t>(order[static_cast<std::size_t>(k + 1)])] : 0.0;
    double q = (ratio[static_cast<std::size_t>(i)] - next_ratio) * weight_sum;
    if (q > 1e-15) {
      std::vector<int> sorted = prefix;
      std::sort(sorted.begin(), sorted.end());
      dist.entries.push_back({std::move(sorted), q});
    }
  }

  double mass = 0.0;
  for (const auto& e : dist.entries) mass += e.probability;
  if (std::abs(mass - 1.0) > 1e-7)
    throw std::runtime_error("sales_to_distribution: mass does not telescope to one");
  for (auto& e : dist.entries) e.probability /= mass;
  return dist;
}

std::string to_string(ConstraintViolation::Family family) {
  switch (family) {
    case ConstraintViolation::Family::SumToOne: return "sum-to-one";
    case ConstraintViolation::Family::MnlValidity: return "mnl-validity";
    case ConstraintViolation::Family::Balancing: return "balancing";
  }
  return "unknown";
}

}  // namespace fairassort
