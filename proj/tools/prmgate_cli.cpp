// prmgate command-line front end: corpus generation, model training,
// evaluation tables, paired timing benchmarks, and SVG scene rendering.
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#ifdef __GLIBC__
#include <malloc.h>
#endif

#include "prmgate/bench/bench.hpp"
#include "prmgate/cae/cae.hpp"
#include "prmgate/datagen/corpus.hpp"
#include "prmgate/mlp/mlp.hpp"
#include "prmgate/pipeline/pipeline.hpp"
#include "prmgate/planner/io.hpp"
#include "prmgate/render/svg.hpp"

namespace {

using namespace prmgate;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitBench = 4;

// Everything a preset pins down; flags and --config override field by field.
struct Settings {
  std::string cls = "2DS";
  std::string robot = "point2d";
  std::vector<double> extents;  // empty = class default
  int train_workspaces = 30;
  int seen_test_workspaces = 30;
  int unseen_workspaces = 10;
  int samples_per_workspace = 100;
  int epochs = 40;
  int batch_size = 10;
  double lr = 1e-3;
  double lambda = 0.001;
  double dropout = 0.0;
  int mlp_fresh_workspaces = 300;
  int mlp_fresh_samples = 0;  // 0 = samples_per_workspace
  int mlp_extra_samples = 0;
  double mlp_pos_weight = 1.5;
  int cae_steps = 32000;
  double cae_lr = 2e-3;
  double cae_lr_min = 1e-5;
  bool cae_augment = true;
  int bench_workspaces = 10;
  int bench_queries = 10;
  int initial_samples = 200;
  int repetitions = 3;
  int threads = 1;
  std::uint64_t seed = 0;
};

Settings preset_settings(const std::string& name) {
  Settings s;
  if (name.empty() || name == "2ds-full") {
    // full-scale 2D experiment: 30 train, seen tests reuse the train set,
    // 10 unseen, 100 samples per workspace
    s.mlp_fresh_workspaces = 1000;
    return s;
  }
  if (name == "2ds-desk") {
    s.train_workspaces = 10;
    s.seen_test_workspaces = 10;
    s.unseen_workspaces = 5;
    return s;
  }
  if (name == "3do-desk") {
    s.cls = "3DO";
    s.robot = "office8";
    s.extents = {21, 21, 6};  // reduced grid
    s.train_workspaces = 10;
    s.seen_test_workspaces = 10;
    s.unseen_workspaces = 5;
    s.samples_per_workspace = 200;
    s.cae_steps = 4000;
    s.epochs = 60;
    s.mlp_fresh_workspaces = 400;
    s.mlp_fresh_samples = 400;
    s.mlp_extra_samples = 8000;
    s.mlp_pos_weight = 1.0;
    s.initial_samples = 2000;
    s.bench_queries = 10;
    return s;
  }
  if (name == "3dc7-desk" || name == "3dc9-desk") {
    s.cls = "3DC";
    s.robot = name == "3dc7-desk" ? "chain7" : "chain9";
    s.train_workspaces = 20;
    s.seen_test_workspaces = 20;
    s.unseen_workspaces = 5;
    s.samples_per_workspace = 200;
    s.cae_steps = 3000;
    s.epochs = 80;
    s.mlp_fresh_workspaces = 600;
    s.mlp_fresh_samples = 400;
    s.mlp_extra_samples = 8000;
    s.mlp_pos_weight = 1.0;
    s.initial_samples = 400;
    s.bench_workspaces = 100;
    s.bench_queries = 1;
    return s;
  }
  throw CLI::ValidationError("--preset",
                             "unknown preset " + name +
                                 " (expected 2ds-full, 2ds-desk, 3do-desk, 3dc7-desk, 3dc9-desk)");
}

void apply_config_file(Settings& s, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file " + path);
  nlohmann::json j;
  is >> j;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("class", s.cls);
  get("robot", s.robot);
  get("extents", s.extents);
  get("train_workspaces", s.train_workspaces);
  get("seen_test_workspaces", s.seen_test_workspaces);
  get("unseen_workspaces", s.unseen_workspaces);
  get("samples_per_workspace", s.samples_per_workspace);
  get("epochs", s.epochs);
  get("batch_size", s.batch_size);
  get("cae_steps", s.cae_steps);
  get("cae_lr", s.cae_lr);
  get("cae_lr_min", s.cae_lr_min);
  get("cae_augment", s.cae_augment);
  get("lr", s.lr);
  get("lambda", s.lambda);
  get("dropout", s.dropout);
  get("mlp_fresh_workspaces", s.mlp_fresh_workspaces);
  get("mlp_fresh_samples", s.mlp_fresh_samples);
  get("mlp_extra_samples", s.mlp_extra_samples);
  get("mlp_pos_weight", s.mlp_pos_weight);
  get("bench_workspaces", s.bench_workspaces);
  get("bench_queries", s.bench_queries);
  get("initial_samples", s.initial_samples);
  get("repetitions", s.repetitions);
  get("threads", s.threads);
  get("seed", s.seed);
}

Eigen::Vector3d extents_from(const Settings& s) {
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < s.extents.size() && i < 3; ++i)
    e[static_cast<int>(i)] = s.extents[i];
  return e;
}

std::string default_data_root() {
  if (const char* env = std::getenv("PRMGATE_DATA_ROOT")) return env;
  return "";
}

// Registers the shared preset/config/override flags on a subcommand. The
// returned callable resolves the final settings with precedence
// flags > config file > preset.
struct SettingsFlags {
  std::string preset, config;
  Settings overrides;
  CLI::App* cmd = nullptr;

  void attach(CLI::App* sub) {
    cmd = sub;
    sub->add_option("--preset", preset, "experiment preset");
    sub->add_option("--config", config, "JSON config file");
    sub->add_option("--class", overrides.cls, "workspace class (2DS, 3DO, 3DC)");
    sub->add_option("--robot", overrides.robot, "robot tag");
    sub->add_option("--extents", overrides.extents, "workspace extents override")
        ->expected(2, 3);
    sub->add_option("--train-workspaces", overrides.train_workspaces);
    sub->add_option("--seen-test-workspaces", overrides.seen_test_workspaces);
    sub->add_option("--unseen-workspaces", overrides.unseen_workspaces);
    sub->add_option("--samples-per-workspace", overrides.samples_per_workspace);
    sub->add_option("--epochs", overrides.epochs);
    sub->add_option("--batch-size", overrides.batch_size);
    sub->add_option("--cae-steps", overrides.cae_steps);
    sub->add_option("--cae-lr", overrides.cae_lr);
    sub->add_option("--cae-lr-min", overrides.cae_lr_min);
    sub->add_flag("--no-augment{false},--augment{true}", overrides.cae_augment,
                  "toggle fresh-grid augmentation during CAE training");
    sub->add_option("--lr", overrides.lr);
    sub->add_option("--lambda", overrides.lambda);
    sub->add_option("--dropout", overrides.dropout);
    sub->add_option("--mlp-fresh-workspaces", overrides.mlp_fresh_workspaces,
                    "fresh labeled workspaces mixed into MLP training");
    sub->add_option("--mlp-fresh-samples", overrides.mlp_fresh_samples,
                    "samples per fresh workspace (0 = samples-per-workspace)");
    sub->add_option("--mlp-extra-samples", overrides.mlp_extra_samples,
                    "extra labeled samples per corpus training workspace");
    sub->add_option("--mlp-pos-weight", overrides.mlp_pos_weight,
                    "loss weight on the valid class");
    sub->add_option("--bench-workspaces", overrides.bench_workspaces);
    sub->add_option("--bench-queries", overrides.bench_queries);
    sub->add_option("--initial-samples", overrides.initial_samples);
    sub->add_option("--repetitions", overrides.repetitions);
    sub->add_option("--threads", overrides.threads,
                    "worker threads (>1 skews timings; keep 1 for benchmarks)");
    sub->add_option("--seed", overrides.seed);
  }

  Settings resolve() const {
    Settings s = preset_settings(preset);
    if (!config.empty()) apply_config_file(s, config);
    auto take = [&](const char* flag, auto& dst, const auto& src) {
      if (cmd->count(flag) > 0) dst = src;
    };
    take("--class", s.cls, overrides.cls);
    take("--robot", s.robot, overrides.robot);
    take("--extents", s.extents, overrides.extents);
    take("--train-workspaces", s.train_workspaces, overrides.train_workspaces);
    take("--seen-test-workspaces", s.seen_test_workspaces, overrides.seen_test_workspaces);
    take("--unseen-workspaces", s.unseen_workspaces, overrides.unseen_workspaces);
    take("--samples-per-workspace", s.samples_per_workspace, overrides.samples_per_workspace);
    take("--epochs", s.epochs, overrides.epochs);
    take("--batch-size", s.batch_size, overrides.batch_size);
    take("--cae-steps", s.cae_steps, overrides.cae_steps);
    take("--cae-lr", s.cae_lr, overrides.cae_lr);
    take("--cae-lr-min", s.cae_lr_min, overrides.cae_lr_min);
    take("--augment", s.cae_augment, overrides.cae_augment);
    take("--lr", s.lr, overrides.lr);
    take("--lambda", s.lambda, overrides.lambda);
    take("--dropout", s.dropout, overrides.dropout);
    take("--mlp-fresh-workspaces", s.mlp_fresh_workspaces, overrides.mlp_fresh_workspaces);
    take("--mlp-fresh-samples", s.mlp_fresh_samples, overrides.mlp_fresh_samples);
    take("--mlp-extra-samples", s.mlp_extra_samples, overrides.mlp_extra_samples);
    take("--mlp-pos-weight", s.mlp_pos_weight, overrides.mlp_pos_weight);
    take("--bench-workspaces", s.bench_workspaces, overrides.bench_workspaces);
    take("--bench-queries", s.bench_queries, overrides.bench_queries);
    take("--initial-samples", s.initial_samples, overrides.initial_samples);
    take("--repetitions", s.repetitions, overrides.repetitions);
    take("--threads", s.threads, overrides.threads);
    take("--seed", s.seed, overrides.seed);
    return s;
  }
};

MlpTrainConfig mlp_train_config(const Settings& s) {
  MlpTrainConfig cfg;
  cfg.lr = s.lr;
  cfg.epochs = s.epochs;
  cfg.batch_size = s.batch_size;
  cfg.pos_weight = s.mlp_pos_weight;
  cfg.seed = derive_seed(s.seed, "mlp-train");
  return cfg;
}

int cmd_gen(const Settings& s, const std::string& out) {
  CorpusParams p;
  p.cls = workspace_class_from_string(s.cls);
  p.robot = s.robot;
  p.extents = extents_from(s);
  p.train_workspaces = s.train_workspaces;
  p.seen_test_workspaces = s.seen_test_workspaces;
  p.unseen_workspaces = s.unseen_workspaces;
  p.samples_per_workspace = s.samples_per_workspace;
  p.seed = s.seed;
  const Corpus c = generate_corpus(p, out);
  std::cout << "wrote corpus: " << out << " (" << c.train.size() << " train, "
            << c.unseen.size() << " unseen workspaces)\n";
  return kExitOk;
}

CaeTrainConfig cae_train_config(const Settings& s, const Corpus& c) {
  CaeTrainConfig cfg;
  cfg.lr = s.cae_lr;
  cfg.lr_min = s.cae_lr_min;
  cfg.lambda = s.lambda;
  cfg.steps = s.cae_steps;
  cfg.batch_size = s.batch_size;
  cfg.seed = s.seed;
  if (s.cae_augment) cfg.augment = corpus_grid_source(c);
  return cfg;
}

int cmd_train_cae(const Settings& s, const std::string& corpus_root,
                  const std::string& out) {
  const Corpus c = load_corpus(corpus_root);
  CaeModel cae = build_cae(cae_arch_for(c.params.cls, c.params.extents),
                           derive_seed(s.seed, "cae-init"));
  const TrainHistory h = train_cae(cae, training_grids(c), cae_train_config(s, c));
  save_cae(cae, out);
  std::cout << "trained CAE (" << to_string(cae.arch) << "), final loss "
            << h.loss.back() << ", wrote " << out << "\n";
  return kExitOk;
}

int cmd_train_mlp(const Settings& s, const std::string& corpus_root,
                  const std::string& cae_path, const std::string& out) {
  const Corpus c = load_corpus(corpus_root);
  const CaeModel cae = load_cae(cae_path);
  const RobotModel robot = RobotModel::from_name(c.params.robot);
  MlpModel mlp = build_mlp(c.params.cls, robot, cae.latent_dim(),
                           derive_seed(s.seed, "mlp-init"), s.dropout);
  const auto items = augmented_mlp_items(
      cae, c, train_entries(c),
      {s.mlp_fresh_workspaces, s.mlp_fresh_samples, s.mlp_extra_samples});
  const MlpHistory h = train_mlp(mlp, items, mlp_train_config(s));
  save_mlp(mlp, out);
  std::cout << "trained MLP, final train accuracy " << h.final_train_accuracy
            << ", wrote " << out << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& corpus_root, const std::string& cae_path,
             const std::string& mlp_path, const std::string& out) {
  const Corpus c = load_corpus(corpus_root);
  const CaeModel cae = load_cae(cae_path);

  std::ostringstream csv;
  csv << "model,split,metric,value\n" << std::setprecision(9);
  for (const auto& [entries, split] :
       {std::pair{seen_test_entries(c), "seen"}, std::pair{unseen_entries(c), "unseen"}}) {
    if (entries.empty()) continue;
    const CaeEvalRow row = evaluate_cae(cae, entries, split);
    csv << "cae," << split << ",accuracy," << row.mean_accuracy << "\n";
    csv << "cae," << split << ",variance," << row.variance << "\n";
    if (!mlp_path.empty()) {
      const MlpModel mlp = load_mlp(mlp_path);
      const MlpEvalRow m = evaluate_mlp(mlp, cae, c, entries, split);
      csv << "mlp," << split << ",accuracy," << m.metrics.accuracy << "\n";
      if (m.metrics.tpr) csv << "mlp," << split << ",tpr," << *m.metrics.tpr << "\n";
      if (m.metrics.tnr) csv << "mlp," << split << ",tnr," << *m.metrics.tnr << "\n";
    }
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    io::atomic_write(out, [&](std::ostream& os) { os << csv.str(); });
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_bench(const Settings& s, const std::string& cae_path, const std::string& mlp_path,
              const std::string& out, const std::string& summary_out) {
  const CaeModel cae = load_cae(cae_path);
  const MlpModel mlp = load_mlp(mlp_path);
  BenchParams p;
  p.cls = workspace_class_from_string(s.cls);
  p.extents = extents_from(s);
  p.robot = s.robot;
  p.workspaces = s.bench_workspaces;
  p.queries_per_workspace = s.bench_queries;
  p.initial_samples = s.initial_samples;
  p.repetitions = s.repetitions;
  p.threads = s.threads;
  p.seed = s.seed;
  const BenchReport report = run_bench(p, cae, mlp);

  bool any_pairs = false;
  for (const auto& row : report.summary) any_pairs |= row.pairs > 0;
  if (out.empty()) {
    write_bench_csv(report, std::cout);
  } else {
    io::atomic_write(out, [&](std::ostream& os) { write_bench_csv(report, os); });
    std::cout << "wrote " << out << "\n";
  }
  if (!summary_out.empty()) {
    io::atomic_write(summary_out,
                     [&](std::ostream& os) { write_bench_summary_csv(report, os); });
    std::cout << "wrote " << summary_out << "\n";
  } else {
    write_bench_summary_csv(report, std::cout);
  }
  if (!any_pairs) {
    std::cerr << "error: bench: no trial succeeded in both arms\n";
    return kExitBench;
  }
  return kExitOk;
}

int cmd_render(const std::string& workspace_path, const std::string& path_path,
               const std::string& out, int roadmap_samples, std::uint64_t seed) {
  const Workspace w = load_workspace(workspace_path);
  std::optional<Path> path;
  if (!path_path.empty()) path = load_path(path_path);

  std::optional<Roadmap> roadmap;
  if (roadmap_samples > 0 && w.dim() == 2) {
    const RobotModel robot = RobotModel::point2d();
    const ConfigSpace cspace(robot, w.extents);
    ExactOracle oracle(robot, w);
    Rng rng(seed);
    const SampleBatch batch =
        sample_n({SamplerKind::Uniform}, cspace, roadmap_samples, rng, oracle);
    roadmap = build_roadmap(batch.samples, 10, cspace);
  }
  save_svg(render_svg(w, roadmap ? &*roadmap : nullptr, path ? &*path : nullptr), out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef __GLIBC__
  // training churns through large per-step temporaries; without these the
  // allocator hands pages back to the kernel on every free and syscall
  // overhead dominates single-core runs
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, -1);
#endif
  CLI::App app{"learned-gate PRM toolkit"};
  app.require_subcommand(1);

  std::string corpus_root = default_data_root();
  std::string out, cae_path, mlp_path, summary_out, workspace_path, path_path;
  int roadmap_samples = 0;
  std::uint64_t render_seed = 0;

  SettingsFlags gen_flags, cae_flags, mlp_flags, bench_flags;

  CLI::App* gen = app.add_subcommand("gen", "generate a corpus");
  gen_flags.attach(gen);
  gen->add_option("--out", out, "corpus output directory");

  CLI::App* tcae = app.add_subcommand("train-cae", "train the autoencoder");
  cae_flags.attach(tcae);
  tcae->add_option("--corpus", corpus_root, "corpus root (default $PRMGATE_DATA_ROOT)");
  tcae->add_option("--out", out, "output weight file")->required();

  CLI::App* tmlp = app.add_subcommand("train-mlp", "train the validity classifier");
  mlp_flags.attach(tmlp);
  tmlp->add_option("--corpus", corpus_root, "corpus root (default $PRMGATE_DATA_ROOT)");
  tmlp->add_option("--cae", cae_path, "trained CAE weight file")->required();
  tmlp->add_option("--out", out, "output weight file")->required();

  CLI::App* ev = app.add_subcommand("eval", "accuracy tables as CSV");
  ev->add_option("--corpus", corpus_root, "corpus root (default $PRMGATE_DATA_ROOT)");
  ev->add_option("--cae", cae_path, "trained CAE weight file")->required();
  ev->add_option("--mlp", mlp_path, "trained MLP weight file");
  ev->add_option("--out", out, "output CSV (stdout if omitted)");

  CLI::App* bench = app.add_subcommand("bench", "paired with/without timing benchmark");
  bench_flags.attach(bench);
  bench->add_option("--cae", cae_path, "trained CAE weight file")->required();
  bench->add_option("--mlp", mlp_path, "trained MLP weight file")->required();
  bench->add_option("--out", out, "per-trial CSV (stdout if omitted)");
  bench->add_option("--summary-out", summary_out, "summary CSV (stdout if omitted)");

  CLI::App* render = app.add_subcommand("render", "draw a workspace as SVG");
  render->add_option("--workspace", workspace_path, "workspace JSON")->required();
  render->add_option("--path", path_path, "path JSON to overlay");
  render->add_option("--roadmap-samples", roadmap_samples,
                     "draw a fresh uniform roadmap with this many samples");
  render->add_option("--seed", render_seed, "roadmap sampling seed");
  render->add_option("--out", out, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (out.empty()) out = corpus_root;
      if (out.empty())
        throw CLI::ValidationError("--out", "no output directory (set --out or PRMGATE_DATA_ROOT)");
      return cmd_gen(gen_flags.resolve(), out);
    }
    if (tcae->parsed()) {
      if (corpus_root.empty()) throw IoError("no corpus root (set --corpus or PRMGATE_DATA_ROOT)");
      return cmd_train_cae(cae_flags.resolve(), corpus_root, out);
    }
    if (tmlp->parsed()) {
      if (corpus_root.empty()) throw IoError("no corpus root (set --corpus or PRMGATE_DATA_ROOT)");
      return cmd_train_mlp(mlp_flags.resolve(), corpus_root, cae_path, out);
    }
    if (ev->parsed()) {
      if (corpus_root.empty()) throw IoError("no corpus root (set --corpus or PRMGATE_DATA_ROOT)");
      return cmd_eval(corpus_root, cae_path, mlp_path, out);
    }
    if (bench->parsed())
      return cmd_bench(bench_flags.resolve(), cae_path, mlp_path, out, summary_out);
    if (render->parsed())
      return cmd_render(workspace_path, path_path, out, roadmap_samples, render_seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
