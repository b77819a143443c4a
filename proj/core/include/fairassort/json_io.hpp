#pragma once

#include <nlohmann/json.hpp>

#include "fairassort/model.hpp"
#include "fairassort/policy.hpp"
#include "fairassort/simulate.hpp"
#include "fairassort/upper_bound.hpp"

namespace fairassort {

/// Instance schema: {"r": [..], "v": [..], "alpha": a}.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

/// Dynamic extension: the static schema plus {"T": t, "c": [..]}.
nlohmann::json dynamic_instance_to_json(const DynamicInstance& dyn);
DynamicInstance dynamic_instance_from_json(const nlohmann::json& j);

nlohmann::json sales_vector_to_json(const SalesVector& xs);
SalesVector sales_vector_from_json(const nlohmann::json& j);

nlohmann::json distribution_to_json(const AssortmentDistribution& dist);

nlohmann::json upper_bound_solution_to_json(const UpperBoundSolution& sol);

nlohmann::json policy_spec_to_json(const PolicySpec& spec);
PolicySpec policy_spec_from_json(const nlohmann::json& j);

nlohmann::json simulation_report_to_json(const SimulationReport& report);

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

}  // namespace fairassort
