#pragma once

#include <chrono>

#include "prmgate/geometry/grid.hpp"
#include "prmgate/planner/roadmap.hpp"
#include "prmgate/samplers/samplers.hpp"

namespace prmgate {

struct PlanQuery {
  Configuration start;
  Configuration goal;
};

struct PlanSpec {
  SamplerSpec sampler;               // generates the initial sample set
  SamplerSpec auxiliary;             // fallback sampler (exact oracle)
  int initial_samples = 200;         // raw draw budget for the sampling phase
  int k = 10;                        // roadmap neighbors
  int fallback_rounds = 20;
  int fallback_batch = 50;
  double edge_resolution = 0.02;     // normalized step for exact edge checks
  std::uint64_t seed = 0;
};

struct PlanStats {
  double sampling_seconds = 0;       // sample generation + validity decisions
  double total_seconds = 0;
  std::uint64_t sampling_oracle_calls = 0;   // gate calls during the sampling phase
  std::uint64_t sampling_exact_calls = 0;    // exact-oracle calls in that phase
  std::uint64_t exact_calls_total = 0;       // including edge validation and fallback
  int raw_attempts = 0;
  int kept_samples = 0;
  int fallback_rounds_used = 0;
  bool success = false;
};

struct PlanResult {
  std::optional<Path> path;
  PlanStats stats;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared pipeline behind plan() and plan_baseline(); the only difference
// between the two arms is the oracle driving the sampling phase.
inline PlanResult plan_impl(const Workspace& workspace, const RobotModel& robot,
                            const PlanQuery& q, ValidityOracle& sampling_oracle,
                            bool oracle_is_exact, const PlanSpec& spec) {
  const auto t_start = std::chrono::steady_clock::now();
  PlanResult result;
  const ConfigSpace cspace(robot, workspace.extents);

  ExactOracle exact(robot, workspace);
  const EdgeValidator validator = [&](const Configuration& a, const Configuration& b) {
    return check_edge(cspace, a, b, [&](const Configuration& q) { return exact.valid(q); },
                      spec.edge_resolution);
  };

  // Sampling phase: raw draws filtered by the supplied validity oracle.
  const auto t_sampling = std::chrono::steady_clock::now();
  Rng sampling_rng(derive_seed(spec.seed, "plan-sampling"));
  SampleBatch batch = run_sampler(spec.sampler, cspace, spec.initial_samples,
                                  spec.initial_samples, sampling_rng, sampling_oracle);
  result.stats.sampling_seconds = seconds_since(t_sampling);
  result.stats.sampling_oracle_calls = batch.oracle_calls;
  result.stats.sampling_exact_calls = oracle_is_exact ? batch.oracle_calls : 0;
  result.stats.raw_attempts = batch.attempts;
  result.stats.kept_samples = static_cast<int>(batch.samples.size());

  Roadmap roadmap = build_roadmap(batch.samples, spec.k, cspace);
  const int start_node = add_node(roadmap, q.start, spec.k, cspace);
  const int goal_node = add_node(roadmap, q.goal, spec.k, cspace);

  std::optional<Path> path = query_nodes(roadmap, start_node, goal_node, validator);

  // Fallback: grow the roadmap with exact-oracle-valid samples and retry.
  Rng fallback_rng(derive_seed(spec.seed, "plan-fallback"));
  while (!path && result.stats.fallback_rounds_used < spec.fallback_rounds) {
    ++result.stats.fallback_rounds_used;
    SampleBatch extra = run_sampler(
        spec.auxiliary, cspace, spec.fallback_batch,
        spec.fallback_batch * spec.auxiliary.max_attempts_per_sample, fallback_rng, exact);
    if (extra.samples.empty()) continue;
    for (const auto& s : extra.samples) add_node(roadmap, s, spec.k, cspace);
    path = query_nodes(roadmap, start_node, goal_node, validator);
  }

  if (path) {
    // Final exact verification, edge by edge.
    bool ok = true;
    for (std::size_t i = 0; i + 1 < path->waypoints.size(); ++i)
      if (!validate_edge(robot, path->waypoints[i], path->waypoints[i + 1], workspace,
                         spec.edge_resolution)) {
        ok = false;
        break;
      }
    if (ok) {
      path->exact_verified = true;
      result.path = std::move(path);
      result.stats.success = true;
    }
  }

  result.stats.exact_calls_total = exact.calls() + (oracle_is_exact ? batch.oracle_calls : 0);
  result.stats.total_seconds = seconds_since(t_start);
  return result;
}

}  // namespace detail

// The learned-gate pipeline: encode the workspace once, filter raw samples
// with the MLP, build a roadmap, query with lazy exact edge validation, and
// fall back to exact-oracle sampling when the query fails.
inline PlanResult plan(const Workspace& workspace, const RobotModel& robot,
                       const PlanQuery& q, const CaeModel& cae, const MlpModel& mlp,
                       const PlanSpec& spec) {
  const ConfigSpace cspace(robot, workspace.extents);
  const LatentCode z = encode(cae, rasterize(workspace));
  MlpOracle oracle(mlp, z, cspace);
  return detail::plan_impl(workspace, robot, q, oracle, false, spec);
}

// The "without" arm: identical pipeline with the exact oracle driving the
// sampling phase. Raw sample draws match plan() for the same seed.
inline PlanResult plan_baseline(const Workspace& workspace, const RobotModel& robot,
                                const PlanQuery& q, const PlanSpec& spec) {
  ExactOracle oracle(robot, workspace);
  return detail::plan_impl(workspace, robot, q, oracle, true, spec);
}

}  // namespace prmgate
