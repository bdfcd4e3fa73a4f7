#pragma once

#include "prmgate/cae/cae.hpp"
#include "prmgate/datagen/corpus.hpp"
#include "prmgate/mlp/mlp.hpp"

namespace prmgate {

// Architecture selection from corpus geometry; the reduced 3DO grid maps to
// its own encoder stack.
inline CaeArch cae_arch_for(WorkspaceClass cls, const Eigen::Vector3d& extents) {
  switch (cls) {
    case WorkspaceClass::TwoDS: return CaeArch::TwoDS;
    case WorkspaceClass::ThreeDC: return CaeArch::ThreeDC;
    case WorkspaceClass::ThreeDO:
      if (static_cast<int>(extents[0]) == 41) return CaeArch::ThreeDO;
      if (static_cast<int>(extents[0]) == 21) return CaeArch::ThreeDOReduced;
      throw DataError("no CAE architecture for 3DO extents " +
                      std::to_string(extents[0]));
  }
  throw DataError("unknown workspace class");
}

inline std::vector<OccupancyGrid> training_grids(const Corpus& c) {
  std::vector<OccupancyGrid> grids;
  for (const auto& e : c.train) grids.push_back(e.grid);
  return grids;
}

// Fresh rasterized grids from the corpus workspace distribution, used as the
// CAE augmentation source. Draws its workspace seeds from the rng passed by
// the trainer, so runs stay reproducible end to end.
inline GridSource corpus_grid_source(const Corpus& c) {
  const WorkspaceClass cls = c.params.cls;
  const Eigen::Vector3d extents = c.params.extents;
  return [cls, extents](Rng& rng) {
    return rasterize(generate_workspace(cls, rng(), extents)).as_vector();
  };
}

// Latent codes are computed once per workspace and shared by its samples.
inline std::vector<MlpTrainItem> mlp_items(const CaeModel& cae, const RobotModel& robot,
                                           const Eigen::Vector3d& extents,
                                           const std::vector<const WorkspaceEntry*>& entries,
                                           bool use_train_samples) {
  const ConfigSpace cspace(robot, extents);
  std::vector<MlpTrainItem> items;
  for (const WorkspaceEntry* e : entries) {
    const LatentCode z = encode(cae, e->grid);
    const auto& samples = use_train_samples ? e->train_samples : e->test_samples;
    for (const auto& s : samples)
      items.push_back({mlp_input(z, cspace.normalize(s.config)), s.valid});
  }
  return items;
}

// Extra exact-labeled training data for the classifier beyond the corpus
// sample files. `fresh_workspaces` generator-fresh workspaces teach
// generalization across layouts; `extra_corpus_samples` additional configs
// per corpus workspace teach generalization across the configuration space
// (the high-DoF classes need far more configs than the corpus carries).
struct MlpAugment {
  int fresh_workspaces = 0;
  int fresh_samples = 0;  // per fresh workspace; 0 = corpus samples_per_workspace
  int extra_corpus_samples = 0;  // per corpus training workspace
};

// Corpus training items plus the augmentation above. All fresh draws use seed
// streams disjoint from corpus generation, so no test workspace or test
// sample can leak in.
inline std::vector<MlpTrainItem> augmented_mlp_items(
    const CaeModel& cae, const Corpus& c,
    const std::vector<const WorkspaceEntry*>& entries, const MlpAugment& aug) {
  const RobotModel robot = RobotModel::from_name(c.params.robot);
  auto items = mlp_items(cae, robot, c.params.extents, entries, true);
  const ConfigSpace cspace(robot, c.params.extents);
  auto add = [&](const LatentCode& z, const std::vector<LabeledSample>& samples) {
    for (const auto& s : samples)
      items.push_back({mlp_input(z, cspace.normalize(s.config)), s.valid});
  };
  if (aug.extra_corpus_samples > 0) {
    std::uint64_t wi = 0;
    for (const WorkspaceEntry* e : entries)
      add(encode(cae, e->grid),
          balanced_samples(robot, e->workspace, aug.extra_corpus_samples,
                           derive_seed(c.params.seed, "mlp-extra", wi++)));
  }
  const int per_fresh =
      aug.fresh_samples > 0 ? aug.fresh_samples : c.params.samples_per_workspace;
  for (int i = 0; i < aug.fresh_workspaces; ++i) {
    const Workspace w =
        generate_workspace(c.params.cls, derive_seed(c.params.seed, "mlp-aug",
                                                     static_cast<std::uint64_t>(i)),
                           c.params.extents);
    add(forward_vec(cae.encoder, rasterize(w).as_vector()),
        balanced_samples(robot, w, per_fresh,
                         derive_seed(c.params.seed, "mlp-aug-s",
                                     static_cast<std::uint64_t>(i))));
  }
  return items;
}

inline std::vector<const WorkspaceEntry*> train_entries(const Corpus& c) {
  std::vector<const WorkspaceEntry*> out;
  for (const auto& e : c.train) out.push_back(&e);
  return out;
}

inline std::vector<const WorkspaceEntry*> seen_test_entries(const Corpus& c) {
  std::vector<const WorkspaceEntry*> out;
  for (int i = 0; i < c.params.seen_test_workspaces && i < static_cast<int>(c.train.size()); ++i)
    out.push_back(&c.train[static_cast<std::size_t>(i)]);
  return out;
}

inline std::vector<const WorkspaceEntry*> unseen_entries(const Corpus& c) {
  std::vector<const WorkspaceEntry*> out;
  for (const auto& e : c.unseen) out.push_back(&e);
  return out;
}

struct CaeEvalRow {
  std::string split;  // "seen" or "unseen"
  double mean_accuracy = 0;
  double variance = 0;  // sample variance across workspaces
};

inline CaeEvalRow evaluate_cae(const CaeModel& cae,
                               const std::vector<const WorkspaceEntry*>& entries,
                               const std::string& split) {
  std::vector<double> accs;
  for (const WorkspaceEntry* e : entries)
    accs.push_back(reconstruction_accuracy(cae, e->grid));
  CaeEvalRow row;
  row.split = split;
  for (double a : accs) row.mean_accuracy += a;
  row.mean_accuracy /= static_cast<double>(accs.size());
  if (accs.size() > 1) {
    for (double a : accs)
      row.variance += (a - row.mean_accuracy) * (a - row.mean_accuracy);
    row.variance /= static_cast<double>(accs.size() - 1);
  }
  return row;
}

struct MlpEvalRow {
  std::string split;
  EvalMetrics metrics;
};

inline MlpEvalRow evaluate_mlp(const MlpModel& mlp, const CaeModel& cae, const Corpus& c,
                               const std::vector<const WorkspaceEntry*>& entries,
                               const std::string& split) {
  const RobotModel robot = RobotModel::from_name(c.params.robot);
  const auto items = mlp_items(cae, robot, c.params.extents, entries, false);
  return {split, evaluate(mlp, items)};
}

}  // namespace prmgate
