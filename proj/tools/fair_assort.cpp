// fair-assort: command line front end for the balanced-market-share
// assortment optimization library. Subcommands cover the static solvers, the
// upper-bound solvers, policy construction, Monte-Carlo simulation, instance
// generation and the experiment pipeline. Output is machine-readable: JSON
// for solutions, RFC-4180 CSV for experiment tables.
//
// Exit codes: 0 success, 2 malformed input JSON, 3 infeasible constraint
// family, 4 gap-bound violation, 1 any other failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairassort/constrained.hpp"
#include "fairassort/instance_gen.hpp"
#include "fairassort/json_io.hpp"
#include "fairassort/parallel.hpp"
#include "fairassort/policy.hpp"
#include "fairassort/rng.hpp"
#include "fairassort/simulate.hpp"
#include "fairassort/static_solver.hpp"
#include "fairassort/upper_bound.hpp"

namespace fa = fairassort;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadJson = 2;
constexpr int kExitInfeasibleFamily = 3;
constexpr int kExitGapViolation = 4;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GapViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw BadInput(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

fa::Instance load_instance(const std::string& path) {
  try {
    return fa::instance_from_json(load_json_file(path));
  } catch (const std::invalid_argument& e) {
    throw BadInput(std::string("bad instance file: ") + e.what());
  }
}

fa::DynamicInstance load_dynamic(const std::string& path) {
  try {
    return fa::dynamic_instance_from_json(load_json_file(path));
  } catch (const std::invalid_argument& e) {
    throw BadInput(std::string("bad dynamic instance file: ") + e.what());
  }
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

/// Constraint family specs: "all", {"max_card":k}, {"min_card":k} or
/// {"categories":[{"ids":[..],"min_count":m}, ..]}.
fa::FamilyPredicate parse_family(const std::string& spec, int n) {
  if (spec == "all") {
    return [](const std::vector<int>&) { return true; };
  }
  json j;
  try {
    j = json::parse(spec);
  } catch (const json::parse_error& e) {
    throw BadInput(std::string("malformed constraint spec: ") + e.what());
  }
  if (j.contains("max_card")) {
    std::size_t k = j.at("max_card").get<std::size_t>();
    return [k](const std::vector<int>& s) { return s.size() <= k; };
  }
  if (j.contains("min_card")) {
    std::size_t k = j.at("min_card").get<std::size_t>();
    return [k](const std::vector<int>& s) { return s.size() >= k; };
  }
  if (j.contains("categories")) {
    struct Category {
      std::vector<int> ids;
      int min_count;
    };
    std::vector<Category> cats;
    for (const auto& c : j.at("categories")) {
      Category cat;
      cat.ids = c.at("ids").get<std::vector<int>>();
      cat.min_count = c.at("min_count").get<int>();
      for (int i : cat.ids)
        if (i < 0 || i >= n) throw BadInput("constraint category index out of range");
      std::sort(cat.ids.begin(), cat.ids.end());
      cats.push_back(std::move(cat));
    }
    return [cats](const std::vector<int>& s) {
      for (const auto& cat : cats) {
        int count = 0;
        for (int i : s)
          if (std::binary_search(cat.ids.begin(), cat.ids.end(), i)) ++count;
        if (count < cat.min_count) return false;
      }
      return true;
    };
  }
  throw BadInput("unrecognized constraint spec: " + spec);
}

json static_solution_to_json(const fa::Instance& inst, const fa::StaticSolution& sol,
                             bool emit_distribution) {
  json j{
      {"revenue", sol.revenue},
      {"threshold_r", sol.threshold_r},
      {"threshold_v", sol.threshold_v},
      {"support", sol.support},
      {"xs", fa::sales_vector_to_json(sol.xs)},
  };
  if (emit_distribution)
    j["distribution"] = fa::distribution_to_json(fa::sales_to_distribution(inst, sol.xs));
  return j;
}

int cmd_solve_static(const std::string& instance_path, bool deterministic,
                     const std::string& constraint, bool emit_distribution, bool brute,
                     const std::string& out_path) {
  fa::Instance inst = load_instance(instance_path);

  if (deterministic) {
    fa::DeterministicSolution det = fa::solve_bms_deterministic(inst);
    emit(json{{"revenue", det.revenue}, {"assortment", det.assortment}}, out_path);
    return kExitOk;
  }

  if (!constraint.empty() && constraint != "all") {
    auto family = parse_family(constraint, inst.n());
    auto oracle = fa::oracle_bruteforce(family);
    fa::ConstrainedSolution sol = fa::solve_bms_constrained(inst, *oracle);
    if (sol.support.empty() && !family({})) {
      throw InfeasibleFamily("constraint family admits no feasible offered set");
    }
    json j{
        {"revenue", sol.revenue},
        {"support", sol.support},
        {"chosen_r", sol.chosen_r},
        {"chosen_v", sol.chosen_v},
        {"xs", fa::sales_vector_to_json(sol.xs)},
    };
    if (emit_distribution)
      j["distribution"] = fa::distribution_to_json(fa::sales_to_distribution(inst, sol.xs));
    emit(j, out_path);
    return kExitOk;
  }

  fa::StaticSolution sol = fa::solve_bms(inst);
  json j = static_solution_to_json(inst, sol, emit_distribution);
  if (brute) {
    auto oracle = fa::oracle_bruteforce([](const std::vector<int>&) { return true; });
    fa::ConstrainedSolution check = fa::solve_bms_constrained(inst, *oracle);
    j["brute_revenue"] = check.revenue;
    if (std::abs(check.revenue - sol.revenue) > 1e-7 * std::max(1.0, sol.revenue)) {
      emit(j, out_path);
      std::cerr << "solver/brute-force mismatch\n";
      return kExitFailure;
    }
  }
  emit(j, out_path);
  return kExitOk;
}

int cmd_upper_bound(const std::string& path, double eps, bool exact, bool alpha1,
                    const std::string& out_path, unsigned threads) {
  fa::DynamicInstance dyn = load_dynamic(path);
  fa::UpperBoundSolution sol;
  if (exact) {
    sol = fa::solve_upper_bound_exact(dyn, 20);
  } else if (alpha1) {
    sol = fa::solve_upper_bound_alpha1(dyn);
  } else {
    sol = fa::solve_upper_bound_fptas(dyn, eps, threads);
  }
  emit(fa::upper_bound_solution_to_json(sol), out_path);
  return kExitOk;
}

fa::UpperBoundSolution solve_upper_bound_auto(const fa::DynamicInstance& dyn, double eps,
                                              unsigned threads) {
  if (std::abs(dyn.base().alpha() - 1.0) <= 1e-12) return fa::solve_upper_bound_alpha1(dyn);
  if (dyn.base().n() <= 12) return fa::solve_upper_bound_exact(dyn);
  return fa::solve_upper_bound_fptas(dyn, eps, threads);
}

fa::PolicySpec make_policy(const fa::DynamicInstance& dyn, const fa::UpperBoundSolution& ub,
                           fa::PolicyKind kind, double eps2) {
  if (kind == fa::PolicyKind::Heuristic1 || kind == fa::PolicyKind::Heuristic2) {
    fa::PolicySpec spec;
    spec.kind = kind;
    spec.targets = ub.xs.x;
    spec.support = ub.support;
    spec.upper_bound_objective = ub.objective;
    return spec;
  }
  double alpha = dyn.base().alpha();
  double e2 = std::abs(alpha - 1.0) <= 1e-12 ? eps2 : std::min(eps2, 1.0 - alpha);
  return fa::calibrate_policy(dyn, ub, e2);
}

int cmd_build_policy(const std::string& path, double eps, double eps2, const std::string& kind,
                     const std::string& out_path, unsigned threads) {
  fa::DynamicInstance dyn = load_dynamic(path);
  fa::UpperBoundSolution ub = solve_upper_bound_auto(dyn, eps, threads);
  fa::PolicyKind k = kind == "pol" ? (std::abs(dyn.base().alpha() - 1.0) <= 1e-12
                                          ? fa::PolicyKind::CappedEqualShare
                                          : fa::PolicyKind::FixedTarget)
                                   : fa::policy_kind_from_string(kind);
  fa::PolicySpec spec = make_policy(dyn, ub, k, eps2);
  emit(fa::policy_spec_to_json(spec), out_path);
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& kind, double eps, double eps2,
                 long replicates, std::uint64_t seed, const std::string& mode,
                 const std::string& out_path, unsigned threads) {
  fa::DynamicInstance dyn = load_dynamic(path);
  fa::UpperBoundSolution ub = solve_upper_bound_auto(dyn, eps, threads);
  fa::PolicyKind k = kind == "pol" ? (std::abs(dyn.base().alpha() - 1.0) <= 1e-12
                                          ? fa::PolicyKind::CappedEqualShare
                                          : fa::PolicyKind::FixedTarget)
                                   : fa::policy_kind_from_string(kind);
  fa::PolicySpec spec = make_policy(dyn, ub, k, eps2);

  fa::SimulateOptions options;
  options.replicates = replicates;
  options.seed = seed;
  options.threads = threads;
  options.mode = mode == "assortment" ? fa::SampleMode::SampleAssortment
                                      : fa::SampleMode::DirectCategorical;
  options.ub_objective = ub.objective;
  fa::SimulationReport report = fa::simulate(dyn, spec, options);
  json j = fa::simulation_report_to_json(report);
  j["policy"] = fa::policy_spec_to_json(spec);
  j["upper_bound_objective"] = ub.objective;
  emit(j, out_path);
  return kExitOk;
}

int cmd_gen_instance(const fa::GenConfig& cfg, const std::string& out_path) {
  fa::DynamicInstance dyn = fa::generate(cfg);
  emit(fa::dynamic_instance_to_json(dyn), out_path);
  return kExitOk;
}

int cmd_gap(int n, double alpha, const std::string& out_path) {
  fa::Instance inst = fa::make_gap_instance(n, alpha);
  double rand_rev = fa::solve_bms(inst).revenue;
  double det_rev = fa::solve_bms_deterministic(inst).revenue;
  double ratio = rand_rev / det_rev;
  double lower =
      alpha >= 1.0 ? n / 2.0 : std::min(1.0 / (2.0 * (1.0 - alpha)), static_cast<double>(n) / 2.0);
  if (n == 1) lower = 1.0;
  double upper =
      alpha >= 1.0 ? static_cast<double>(n) : std::min(2.0 / (1.0 - alpha), static_cast<double>(n));
  json j{
      {"n", n},           {"alpha", alpha},       {"randomized_revenue", rand_rev},
      {"deterministic_revenue", det_rev},         {"ratio", ratio},
      {"lower_bound", lower},                     {"upper_bound", upper},
  };
  emit(j, out_path);
  if (ratio < lower - 1e-9 || ratio > upper + 1e-9) {
    throw GapViolation("gap ratio outside the proven bounds");
  }
  return kExitOk;
}

std::string csv_double(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << v;
  return os.str();
}

int cmd_experiment(const std::string& config_path, const std::string& out_path, long replicates,
                   std::uint64_t seed, bool paper_scale, unsigned threads, bool quiet) {
  json config = config_path.empty() ? json::object() : load_json_file(config_path);

  int n = config.value("n", 10);
  std::vector<long> t_values = config.value("T", std::vector<long>{200, 400, 800});
  std::vector<double> p0_values = config.value("P0", std::vector<double>{0.1, 0.3});
  std::vector<double> gamma_values = config.value("gamma", std::vector<double>{0.6, 0.8});
  std::vector<double> alpha_values = config.value("alpha", std::vector<double>{0.25, 0.5, 0.75});
  if (replicates <= 0) replicates = config.value("replicates", 200L);
  if (seed == 0) seed = config.value("seed", 20240601ULL);
  double eps = config.value("eps", 0.05);
  double eps2 = config.value("eps2", 1e-3);

  if (paper_scale) {
    n = 40;
    t_values = {2000, 4000, 8000, 16000};
    replicates = 400;
    if (!quiet)
      std::cerr << "warning: paper-scale experiment grid (n=40, T up to 16000); "
                   "this can run for a long time\n";
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }

  *out << "T,P0,gamma,alpha,c_bar,K,pol_rev,hr1_rev,hr2_rev,pol_ratio,hr1_ratio,hr2_ratio\r\n";

  int failures = 0;
  long cell_index = 0;
  double sums[6] = {0, 0, 0, 0, 0, 0};
  long done = 0;

  for (long T : t_values) {
    for (double p0 : p0_values) {
      for (double gamma : gamma_values) {
        for (double alpha : alpha_values) {
          ++cell_index;
          try {
            fa::GenConfig cfg;
            cfg.n = n;
            cfg.T = T;
            cfg.p0 = p0;
            cfg.gamma = gamma;
            cfg.alpha = alpha;
            cfg.seed = fa::splitmix64_mix(seed + static_cast<std::uint64_t>(cell_index));
            fa::DynamicInstance dyn = fa::generate(cfg);

            fa::UpperBoundSolution ub = solve_upper_bound_auto(dyn, eps, threads);
            long c_bar = 0;
            for (int i : ub.support)
              c_bar = c_bar == 0 ? dyn.inventory(i) : std::min(c_bar, dyn.inventory(i));
            long K = static_cast<long>(ub.support.size());

            double revs[3], ratios[3];
            const fa::PolicyKind kinds[3] = {fa::PolicyKind::FixedTarget,
                                             fa::PolicyKind::Heuristic1,
                                             fa::PolicyKind::Heuristic2};
            for (int p = 0; p < 3; ++p) {
              fa::PolicySpec spec = make_policy(dyn, ub, kinds[p], eps2);
              fa::SimulateOptions options;
              options.replicates = replicates;
              options.seed = cfg.seed;  // shared stream across policies per cell
              options.threads = threads;
              options.ub_objective = ub.objective;
              fa::SimulationReport report = fa::simulate(dyn, spec, options);
              revs[p] = report.normalized_revenue;
              ratios[p] = report.minmax_ratio;
              if (report.balancing_violations > 0)
                throw std::runtime_error("cumulative balancing assertion fired");
            }

            *out << T << ',' << csv_double(p0) << ',' << csv_double(gamma) << ','
                 << csv_double(alpha) << ',' << c_bar << ',' << K;
            for (int p = 0; p < 3; ++p) *out << ',' << csv_double(revs[p]);
            for (int p = 0; p < 3; ++p) *out << ',' << csv_double(ratios[p]);
            *out << "\r\n";
            for (int p = 0; p < 3; ++p) {
              sums[p] += revs[p];
              sums[3 + p] += ratios[p];
            }
            ++done;
          } catch (const std::exception& e) {
            ++failures;
            std::cerr << "cell (" << T << ',' << p0 << ',' << gamma << ',' << alpha
                      << ") failed: " << e.what() << "\n";
          }
        }
      }
    }
  }

  if (done > 0) {
    *out << "avg,,,,,";
    for (int p = 0; p < 3; ++p) *out << ',' << csv_double(sums[p] / static_cast<double>(done));
    for (int p = 0; p < 3; ++p) *out << ',' << csv_double(sums[3 + p] / static_cast<double>(done));
    *out << "\r\n";
  }
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assortment optimization with balanced market shares"};
  app.require_subcommand(1);

  unsigned threads = 0;
  bool quiet = false;
  app.add_option("--threads", threads, "Worker threads (FAIR_ASSORT_THREADS fallback)");
  app.add_flag("--quiet", quiet, "Suppress warnings on stderr");

  std::string instance_path, out_path, constraint, kind = "pol", mode = "direct";
  bool deterministic = false, emit_distribution = false, brute = false;
  bool exact = false, alpha1 = false, paper_scale = false;
  double eps = 0.05, eps2 = 1e-3, alpha = 0.5;
  long replicates = 0;
  std::uint64_t seed = 0;
  int n = 10;
  fa::GenConfig gen_cfg;

  auto* solve_static = app.add_subcommand("solve-static", "Solve the static problem");
  solve_static->add_option("instance", instance_path, "Instance JSON file")->required();
  solve_static->add_flag("--deterministic", deterministic, "Single-assortment variant");
  solve_static->add_option("--constraint", constraint, "Constraint family spec");
  solve_static->add_flag("--emit-distribution", emit_distribution,
                         "Include the nested assortment distribution");
  solve_static->add_flag("--brute", brute, "Cross-check against the exhaustive oracle");
  solve_static->add_option("-o,--output", out_path, "Output file (stdout default)");

  auto* solve_constrained = app.add_subcommand("solve-constrained", "Solve with a constraint family");
  solve_constrained->add_option("instance", instance_path)->required();
  solve_constrained->add_option("--constraint", constraint, "Constraint family spec")->required();
  solve_constrained->add_flag("--emit-distribution", emit_distribution);
  solve_constrained->add_option("-o,--output", out_path);

  auto* upper_bound = app.add_subcommand("upper-bound", "Solve the dynamic relaxation");
  upper_bound->add_option("instance", instance_path, "Dynamic instance JSON file")->required();
  upper_bound->add_option("--eps", eps, "FPTAS accuracy in (0, 1/2)");
  upper_bound->add_flag("--exact", exact, "Desk-scale exact oracle");
  upper_bound->add_flag("--alpha1", alpha1, "Exact alpha=1 algorithm");
  upper_bound->add_option("-o,--output", out_path);

  auto* build_policy = app.add_subcommand("build-policy", "Construct a dynamic policy");
  build_policy->add_option("instance", instance_path)->required();
  build_policy->add_option("--eps", eps, "Upper-bound FPTAS accuracy");
  build_policy->add_option("--eps2", eps2, "Bisection precision");
  build_policy->add_option("--kind", kind, "pol | hr1 | hr2");
  build_policy->add_option("-o,--output", out_path);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo policy evaluation");
  simulate->add_option("instance", instance_path)->required();
  simulate->add_option("--kind", kind, "pol | hr1 | hr2");
  simulate->add_option("--eps", eps);
  simulate->add_option("--eps2", eps2);
  simulate->add_option("--replicates", replicates, "Replicate count")->default_val(400);
  simulate->add_option("--seed", seed);
  simulate->add_option("--mode", mode, "direct | assortment");
  simulate->add_option("-o,--output", out_path);

  auto* gen_instance = app.add_subcommand("gen-instance", "Generate a synthetic instance");
  gen_instance->add_option("--n", gen_cfg.n);
  gen_instance->add_option("--T", gen_cfg.T);
  gen_instance->add_option("--p0", gen_cfg.p0);
  gen_instance->add_option("--gamma", gen_cfg.gamma);
  gen_instance->add_option("--alpha", gen_cfg.alpha);
  gen_instance->add_option("--seed", gen_cfg.seed);
  gen_instance->add_option("-o,--output", out_path);

  auto* experiment = app.add_subcommand("experiment", "Run the experiment grid to CSV");
  experiment->add_option("config", instance_path, "Grid config JSON (optional)");
  experiment->add_option("--replicates", replicates);
  experiment->add_option("--seed", seed);
  experiment->add_flag("--paper-scale", paper_scale, "Full-size grid (slow)");
  experiment->add_option("-o,--output", out_path);

  auto* gap = app.add_subcommand("gap", "Value-of-randomization report");
  gap->add_option("--n", n)->required();
  gap->add_option("--alpha", alpha)->required();
  gap->add_option("-o,--output", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(solve_static))
      return cmd_solve_static(instance_path, deterministic, constraint, emit_distribution, brute,
                              out_path);
    if (app.got_subcommand(solve_constrained))
      return cmd_solve_static(instance_path, false, constraint.empty() ? "all" : constraint,
                              emit_distribution, false, out_path);
    if (app.got_subcommand(upper_bound))
      return cmd_upper_bound(instance_path, eps, exact, alpha1, out_path, threads);
    if (app.got_subcommand(build_policy))
      return cmd_build_policy(instance_path, eps, eps2, kind, out_path, threads);
    if (app.got_subcommand(simulate))
      return cmd_simulate(instance_path, kind, eps, eps2, replicates, seed, mode, out_path,
                          threads);
    if (app.got_subcommand(gen_instance)) return cmd_gen_instance(gen_cfg, out_path);
    if (app.got_subcommand(experiment))
      return cmd_experiment(instance_path, out_path, replicates, seed, paper_scale, threads, quiet);
    if (app.got_subcommand(gap)) return cmd_gap(n, alpha, out_path);
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadJson;
  } catch (const InfeasibleFamily& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasibleFamily;
  } catch (const GapViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGapViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
