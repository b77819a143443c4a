#pragma once

#include <cstdint>

#include "fairassort/model.hpp"

namespace fairassort {

/// Configuration of the synthetic test-problem generator.
struct GenConfig {
  int n = 40;
  long T = 2000;
  double p0 = 0.1;     // no-purchase probability when all products are offered
  double gamma = 0.6;  // inventory-to-demand ratio
  double alpha = 0.5;
  std::uint64_t seed = 0;
};

/// Synthetic instance: revenues uniform on [0, 10]; weights drawn uniform on
/// [1, 10] and rescaled so the no-purchase probability of the full offer is
/// exactly p0; inventories c_i = ceil(gamma * Demand_i) where Demand_i mixes
/// the unconstrained optimal assortment (3/4 of the horizon) with the full
/// offer (1/4). Deterministic per seed.
DynamicInstance generate(const GenConfig& cfg);

}  // namespace fairassort
