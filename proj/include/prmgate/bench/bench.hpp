#pragma once

#include <thread>

#include "prmgate/pipeline/pipeline.hpp"
#include "prmgate/planner/plan.hpp"

namespace prmgate {

struct BenchParams {
  WorkspaceClass cls = WorkspaceClass::TwoDS;
  Eigen::Vector3d extents = Eigen::Vector3d::Zero();
  std::string robot = "point2d";
  int workspaces = 10;
  int queries_per_workspace = 10;
  int initial_samples = 200;  // raw samples per query (N)
  int repetitions = 3;        // timing repetitions, median reported
  int threads = 1;            // >1 only for non-timing runs
  std::vector<SamplerKind> samplers = {SamplerKind::Uniform, SamplerKind::ObstacleBased,
                                       SamplerKind::Gaussian, SamplerKind::Bridge};
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::string cls, robot, sampler, arm;
  int workspace_idx = 0, query_idx = 0;
  double t_sampling = 0, t_total = 0;
  std::uint64_t sampling_oracle_calls = 0, sampling_exact_calls = 0, exact_calls_total = 0;
  int kept_samples = 0, fallback_rounds = 0;
  bool success = false;
  std::uint64_t seed = 0;
};

struct BenchSummaryRow {
  std::string cls, robot, sampler;
  int pairs = 0;  // trials where both arms succeeded
  double sampling_improvement = 0;  // mean of 1 - t_with/t_without
  double total_improvement = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchSummaryRow> summary;
};

namespace detail {

inline Configuration draw_valid_config(const ConfigSpace& cspace, const RobotModel& robot,
                                       const Workspace& w, std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 100000; ++i) {
    Configuration q = cspace.sample_uniform(rng);
    if (!collide(robot, q, w)) return q;
  }
  throw DataError("no valid configuration found in workspace");
}

inline double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

}  // namespace detail

// Paired with/without trials over seeded (workspace, query) sets. Both arms
// share the plan seed, so their raw sample draws coincide.
inline BenchReport run_bench(const BenchParams& params, const CaeModel& cae,
                             const MlpModel& mlp) {
  BenchParams p = params;
  if (p.extents.isZero()) p.extents = default_extents(p.cls);
  const RobotModel robot = RobotModel::from_name(p.robot);
  const ConfigSpace cspace(robot, p.extents);

  struct Trial {
    int ws_idx, query_idx;
    SamplerKind sampler;
  };
  std::vector<Trial> trials;
  for (int w = 0; w < p.workspaces; ++w)
    for (int q = 0; q < p.queries_per_workspace; ++q)
      for (SamplerKind s : p.samplers) trials.push_back({w, q, s});

  std::vector<Workspace> workspaces;
  for (int w = 0; w < p.workspaces; ++w)
    workspaces.push_back(generate_workspace(
        p.cls, derive_seed(p.seed, "bench-workspace", static_cast<std::uint64_t>(w)),
        p.extents));

  std::vector<std::vector<BenchRow>> per_trial(trials.size());
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Trial& trial = trials[t];
      const Workspace& w = workspaces[static_cast<std::size_t>(trial.ws_idx)];
      const std::uint64_t query_seed = derive_seed(
          p.seed, "bench-query",
          static_cast<std::uint64_t>(trial.ws_idx) * 1000 + trial.query_idx);
      PlanQuery query{
          detail::draw_valid_config(cspace, robot, w, derive_seed(query_seed, "start")),
          detail::draw_valid_config(cspace, robot, w, derive_seed(query_seed, "goal"))};

      PlanSpec spec;
      spec.sampler.kind = trial.sampler;
      spec.auxiliary.kind = trial.sampler;
      spec.initial_samples = p.initial_samples;
      spec.seed = derive_seed(query_seed, "plan", static_cast<std::uint64_t>(trial.sampler));

      PlanResult with, without;
      std::vector<double> ts_with, tt_with, ts_without, tt_without;
      for (int rep = 0; rep < p.repetitions; ++rep) {
        with = plan(w, robot, query, cae, mlp, spec);
        without = plan_baseline(w, robot, query, spec);
        ts_with.push_back(with.stats.sampling_seconds);
        tt_with.push_back(with.stats.total_seconds);
        ts_without.push_back(without.stats.sampling_seconds);
        tt_without.push_back(without.stats.total_seconds);
      }
      auto median = [&](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
      };

      auto make_row = [&](const char* arm, const PlanResult& r, double ts, double tt) {
        BenchRow row;
        row.cls = to_string(p.cls);
        row.robot = p.robot;
        row.sampler = to_string(trial.sampler);
        row.arm = arm;
        row.workspace_idx = trial.ws_idx;
        row.query_idx = trial.query_idx;
        row.t_sampling = ts;
        row.t_total = tt;
        row.sampling_oracle_calls = r.stats.sampling_oracle_calls;
        row.sampling_exact_calls = r.stats.sampling_exact_calls;
        row.exact_calls_total = r.stats.exact_calls_total;
        row.kept_samples = r.stats.kept_samples;
        row.fallback_rounds = r.stats.fallback_rounds_used;
        row.success = r.stats.success;
        row.seed = spec.seed;
        return row;
      };
      per_trial[t] = {make_row("with", with, median(ts_with), median(tt_with)),
                      make_row("without", without, median(ts_without), median(tt_without))};
    }
  };

  if (p.threads <= 1) {
    run_range(0, trials.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (trials.size() + p.threads - 1) / p.threads;
    for (int i = 0; i < p.threads; ++i) {
      const std::size_t begin = static_cast<std::size_t>(i) * chunk;
      if (begin >= trials.size()) break;
      pool.emplace_back(run_range, begin, std::min(begin + chunk, trials.size()));
    }
    for (auto& th : pool) th.join();
  }

  BenchReport report;

  // Improvement ratios over same-seed pairs where both arms succeeded.
  for (SamplerKind s : p.samplers) {
    BenchSummaryRow sum;
    sum.cls = to_string(p.cls);
    sum.robot = p.robot;
    sum.sampler = to_string(s);
    for (const auto& pair : per_trial) {
      if (pair.empty() || pair[0].sampler != sum.sampler) continue;
      const BenchRow& with = pair[0];
      const BenchRow& without = pair[1];
      if (!with.success || !without.success) continue;
      ++sum.pairs;
      sum.sampling_improvement += 1.0 - with.t_sampling / without.t_sampling;
      sum.total_improvement += 1.0 - with.t_total / without.t_total;
    }
    if (sum.pairs > 0) {
      sum.sampling_improvement /= sum.pairs;
      sum.total_improvement /= sum.pairs;
    }
    report.summary.push_back(sum);
  }

  for (auto& pair : per_trial)
    for (auto& row : pair) report.rows.push_back(std::move(row));
  return report;
}

inline void write_bench_csv(const BenchReport& report, std::ostream& os) {
  os << "class,robot,sampler,arm,workspace,query,t_sampling,t_total,"
        "sampling_oracle_calls,sampling_exact_calls,exact_calls_total,"
        "kept_samples,fallback_rounds,success,seed\n";
  os << std::setprecision(9);
  for (const auto& r : report.rows)
    os << r.cls << ',' << r.robot << ',' << r.sampler << ',' << r.arm << ','
       << r.workspace_idx << ',' << r.query_idx << ',' << r.t_sampling << ','
       << r.t_total << ',' << r.sampling_oracle_calls << ',' << r.sampling_exact_calls
       << ',' << r.exact_calls_total << ',' << r.kept_samples << ',' << r.fallback_rounds
       << ',' << (r.success ? 1 : 0) << ',' << r.seed << '\n';
}

inline void write_bench_summary_csv(const BenchReport& report, std::ostream& os) {
  os << "class,robot,sampler,pairs,sampling_improvement,total_improvement\n";
  os << std::setprecision(9);
  for (const auto& s : report.summary)
    os << s.cls << ',' << s.robot << ',' << s.sampler << ',' << s.pairs << ','
       << s.sampling_improvement << ',' << s.total_improvement << '\n';
}

}  // namespace prmgate
