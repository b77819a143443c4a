#include "fairassort/json_io.hpp"

#include <stdexcept>

namespace fairassort {

using nlohmann::json;

json instance_to_json(const Instance& inst) {
  return json{{"r", inst.revenues()}, {"v", inst.weights()}, {"alpha", inst.alpha()}};
}

Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("v") || !j.contains("alpha"))
    throw std::invalid_argument("instance JSON must contain r, v and alpha");
  return Instance(j.at("r").get<std::vector<double>>(),
                  j.at("v").get<std::vector<double>>(),
                  j.at("alpha").get<double>());
}

json dynamic_instance_to_json(const DynamicInstance& dyn) {
  json j = instance_to_json(dyn.base());
  j["T"] = dyn.T();
  j["c"] = dyn.inventories();
  return j;
}

DynamicInstance dynamic_instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("T") || !j.contains("c"))
    throw std::invalid_argument("dynamic instance JSON must contain T and c");
  return DynamicInstance(instance_from_json(j), j.at("T").get<long>(),
                         j.at("c").get<std::vector<long>>());
}

json sales_vector_to_json(const SalesVector& xs) {
  return json{{"x0", xs.x0}, {"x", xs.x}};
}

SalesVector sales_vector_from_json(const json& j) {
  SalesVector xs;
  xs.x0 = j.at("x0").get<double>();
  xs.x = j.at("x").get<std::vector<double>>();
  return xs;
}

json distribution_to_json(const AssortmentDistribution& dist) {
  json entries = json::array();
  for (const auto& e : dist.entries) {
    entries.push_back(json{{"assortment", e.assortment}, {"probability", e.probability}});
  }
  return json{{"entries", entries}};
}

json upper_bound_solution_to_json(const UpperBoundSolution& sol) {
  return json{
      {"objective", sol.objective},
      {"epsilon", sol.epsilon},
      {"xs", sales_vector_to_json(sol.xs)},
      {"support", sol.support},
      {"grid",
       {{"grid0_size", sol.stats.grid0_size},
        {"gridy_size", sol.stats.gridy_size},
        {"pairs", sol.stats.pairs},
        {"mckp_runs", sol.stats.mckp_runs}}},
  };
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::FixedTarget: return "fixed-target";
    case PolicyKind::CappedEqualShare: return "capped-equal-share";
    case PolicyKind::Heuristic1: return "heuristic-1";
    case PolicyKind::Heuristic2: return "heuristic-2";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "fixed-target" || name == "pol") return PolicyKind::FixedTarget;
  if (name == "capped-equal-share") return PolicyKind::CappedEqualShare;
  if (name == "heuristic-1" || name == "hr1") return PolicyKind::Heuristic1;
  if (name == "heuristic-2" || name == "hr2") return PolicyKind::Heuristic2;
  throw std::invalid_argument("unknown policy kind: " + name);
}

json policy_spec_to_json(const PolicySpec& spec) {
  return json{
      {"kind", to_string(spec.kind)},
      {"targets", spec.targets},
      {"cap", spec.cap},
      {"support", spec.support},
      {"g_min", spec.g_min},
      {"g_values", spec.g_values},
      {"upper_bound_objective", spec.upper_bound_objective},
      {"epsilon2", spec.epsilon2},
      {"max_bisection_iterations", spec.max_bisection_iterations},
  };
}

PolicySpec policy_spec_from_json(const json& j) {
  PolicySpec spec;
  spec.kind = policy_kind_from_string(j.at("kind").get<std::string>());
  spec.targets = j.at("targets").get<std::vector<double>>();
  spec.cap = j.value("cap", 0L);
  spec.support = j.at("support").get<std::vector<int>>();
  spec.g_min = j.value("g_min", 0.0);
  if (j.contains("g_values")) spec.g_values = j.at("g_values").get<std::vector<double>>();
  spec.upper_bound_objective = j.value("upper_bound_objective", 0.0);
  spec.epsilon2 = j.value("epsilon2", 0.0);
  spec.max_bisection_iterations = j.value("max_bisection_iterations", 0);
  return spec;
}

json simulation_report_to_json(const SimulationReport& report) {
  return json{
      {"replicates", report.replicates},
      {"mean_revenue", report.mean_revenue},
      {"se_revenue", report.se_revenue},
      {"normalized_revenue", report.normalized_revenue},
      {"mean_sales", report.mean_sales},
      {"minmax_ratio", report.minmax_ratio},
      {"minmax_ratio_se", report.minmax_ratio_se},
      {"balancing_violations", report.balancing_violations},
  };
}

}  // namespace fairassort
