#pragma once

#include <iomanip>
#include <sstream>

#include "prmgate/geometry/collision.hpp"
#include "prmgate/geometry/grid.hpp"
#include "prmgate/geometry/io.hpp"
#include "prmgate/geometry/workspace_gen.hpp"
#include "prmgate/mlp/mlp.hpp"

namespace prmgate {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kCorpusFormatVersion = 1;

struct CorpusParams {
  WorkspaceClass cls = WorkspaceClass::TwoDS;
  std::string robot = "point2d";
  Eigen::Vector3d extents = Eigen::Vector3d::Zero();  // zero = class default
  int train_workspaces = 30;
  int seen_test_workspaces = 30;  // prefix of the train set used as seen tests
  int unseen_workspaces = 10;
  int samples_per_workspace = 100;
  std::uint64_t seed = 0;
};

// Uniform draws kept against per-class quotas so labels land 50/50.
inline std::vector<LabeledSample> balanced_samples(const RobotModel& robot,
                                                   const Workspace& w, int n,
                                                   std::uint64_t seed) {
  const ConfigSpace cspace(robot, w.extents);
  Rng rng(seed);
  int want_valid = n / 2 + (n % 2);
  int want_invalid = n / 2;
  std::vector<LabeledSample> out;
  const long cap = 5000L * n;
  for (long attempt = 0; attempt < cap && want_valid + want_invalid > 0; ++attempt) {
    Configuration q = cspace.sample_uniform(rng);
    const bool valid = !collide(robot, q, w);
    if (valid && want_valid > 0) {
      out.push_back({std::move(q), 1});
      --want_valid;
    } else if (!valid && want_invalid > 0) {
      out.push_back({std::move(q), 0});
      --want_invalid;
    }
  }
  if (want_valid + want_invalid > 0)
    throw DataError("could not balance labeled samples for workspace seed " +
                    std::to_string(w.seed));
  return out;
}

inline void save_samples_csv(const std::vector<LabeledSample>& samples,
                             const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) {
    const int d = samples.empty() ? 0 : static_cast<int>(samples.front().config.size());
    for (int i = 0; i < d; ++i) os << "q" << i << ",";
    os << "label\n";
    os << std::setprecision(17);
    for (const auto& s : samples) {
      for (int i = 0; i < d; ++i) os << s.config[i] << ",";
      os << s.valid << "\n";
    }
  });
}

inline std::vector<LabeledSample> load_samples_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty sample file " + path.string());
  std::vector<LabeledSample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) fields.push_back(std::stod(cell));
    LabeledSample s;
    s.config = Eigen::Map<const Eigen::VectorXd>(fields.data(),
                                                 static_cast<Eigen::Index>(fields.size()) - 1);
    s.valid = static_cast<int>(fields.back());
    out.push_back(std::move(s));
  }
  return out;
}

struct WorkspaceEntry {
  Workspace workspace;
  OccupancyGrid grid;
  std::vector<LabeledSample> train_samples;  // empty for unseen workspaces
  std::vector<LabeledSample> test_samples;
};

struct Corpus {
  CorpusParams params;
  std::vector<WorkspaceEntry> train;
  std::vector<WorkspaceEntry> unseen;
};

namespace detail {

inline std::string entry_stem(const char* role, int index) {
  std::ostringstream ss;
  ss << role << "_" << std::setw(3) << std::setfill('0') << index;
  return ss.str();
}

inline WorkspaceEntry make_entry(const CorpusParams& p, const RobotModel& robot,
                                 const char* role, int index) {
  WorkspaceEntry e;
  const std::uint64_t ws_seed = derive_seed(p.seed, role, static_cast<std::uint64_t>(index));
  e.workspace = generate_workspace(p.cls, ws_seed, p.extents);
  e.grid = rasterize(e.workspace);
  const bool is_train = std::string_view(role) == "train";
  if (is_train)
    e.train_samples = balanced_samples(robot, e.workspace, p.samples_per_workspace,
                                       derive_seed(ws_seed, "train-samples"));
  e.test_samples = balanced_samples(robot, e.workspace, p.samples_per_workspace,
                                    derive_seed(ws_seed, "test-samples"));
  return e;
}

}  // namespace detail

inline Corpus generate_corpus_in_memory(const CorpusParams& params) {
  CorpusParams p = params;
  if (p.extents.isZero()) p.extents = default_extents(p.cls);
  if (p.seen_test_workspaces > p.train_workspaces)
    throw DataError("seen test workspaces exceed train workspaces");
  const RobotModel robot = RobotModel::from_name(p.robot);
  Corpus c;
  c.params = p;
  for (int i = 0; i < p.train_workspaces; ++i)
    c.train.push_back(detail::make_entry(p, robot, "train", i));
  for (int i = 0; i < p.unseen_workspaces; ++i)
    c.unseen.push_back(detail::make_entry(p, robot, "unseen", i));
  return c;
}

// Persists the corpus under `root`: manifest.json, workspaces/*.json,
// grids/*.bin, samples/*.csv, with a checksum per data file.
inline Corpus generate_corpus(const CorpusParams& params, const std::filesystem::path& root) {
  Corpus c = generate_corpus_in_memory(params);
  namespace fs = std::filesystem;
  fs::create_directories(root / "workspaces");
  fs::create_directories(root / "grids");
  fs::create_directories(root / "samples");

  nlohmann::json manifest;
  manifest["format_version"] = kCorpusFormatVersion;
  manifest["class"] = to_string(c.params.cls);
  manifest["robot"] = c.params.robot;
  manifest["seed"] = c.params.seed;
  manifest["extents"] = std::vector<double>(
      c.params.extents.data(), c.params.extents.data() + workspace_dim(c.params.cls));
  manifest["counts"] = {{"train", c.params.train_workspaces},
                        {"seen_test", c.params.seen_test_workspaces},
                        {"unseen", c.params.unseen_workspaces},
                        {"samples_per_workspace", c.params.samples_per_workspace}};
  auto& files = manifest["files"] = nlohmann::json::array();

  auto emit = [&](const WorkspaceEntry& e, const char* role, int index) {
    const std::string stem = detail::entry_stem(role, index);
    const auto ws_path = root / "workspaces" / (stem + ".json");
    const auto grid_path = root / "grids" / (stem + ".bin");
    save_workspace(e.workspace, ws_path);
    save_grid(e.grid, grid_path);
    nlohmann::json f;
    f["role"] = role;
    f["index"] = index;
    f["workspace_seed"] = e.workspace.seed;
    f["workspace"] = "workspaces/" + stem + ".json";
    f["grid"] = "grids/" + stem + ".bin";
    nlohmann::json checksums;
    checksums[f["workspace"].get<std::string>()] = io::file_checksum(ws_path);
    checksums[f["grid"].get<std::string>()] = io::file_checksum(grid_path);
    if (!e.train_samples.empty()) {
      const auto p = root / "samples" / (stem + "_train.csv");
      save_samples_csv(e.train_samples, p);
      f["train_samples"] = "samples/" + stem + "_train.csv";
      checksums[f["train_samples"].get<std::string>()] = io::file_checksum(p);
    }
    const auto p = root / "samples" / (stem + "_test.csv");
    save_samples_csv(e.test_samples, p);
    f["test_samples"] = "samples/" + stem + "_test.csv";
    checksums[f["test_samples"].get<std::string>()] = io::file_checksum(p);
    f["checksums"] = checksums;
    files.push_back(f);
  };

  for (int i = 0; i < static_cast<int>(c.train.size()); ++i) emit(c.train[i], "train", i);
  for (int i = 0; i < static_cast<int>(c.unseen.size()); ++i) emit(c.unseen[i], "unseen", i);

  io::atomic_write(root / "manifest.json",
                   [&](std::ostream& os) { os << manifest.dump(2) << "\n"; });
  return c;
}

inline Corpus load_corpus(const std::filesystem::path& root) {
  std::ifstream is(root / "manifest.json");
  if (!is) throw IoError("cannot open " + (root / "manifest.json").string());
  nlohmann::json manifest;
  is >> manifest;
  if (manifest.at("format_version").get<int>() != kCorpusFormatVersion)
    throw DataError("corpus format version mismatch");

  Corpus c;
  c.params.cls = workspace_class_from_string(manifest.at("class").get<std::string>());
  c.params.robot = manifest.at("robot").get<std::string>();
  RobotModel::from_name(c.params.robot);  // validates the robot tag
  c.params.seed = manifest.at("seed").get<std::uint64_t>();
  const auto ext = manifest.at("extents").get<std::vector<double>>();
  for (std::size_t a = 0; a < ext.size(); ++a)
    c.params.extents[static_cast<int>(a)] = ext[a];
  const auto& counts = manifest.at("counts");
  c.params.train_workspaces = counts.at("train").get<int>();
  c.params.seen_test_workspaces = counts.at("seen_test").get<int>();
  c.params.unseen_workspaces = counts.at("unseen").get<int>();
  c.params.samples_per_workspace = counts.at("samples_per_workspace").get<int>();

  for (const auto& f : manifest.at("files")) {
    for (const auto& [rel, expected] : f.at("checksums").items()) {
      const auto path = root / rel;
      if (!std::filesystem::exists(path)) throw IoError("missing corpus file " + path.string());
      if (io::file_checksum(path) != expected.get<std::uint64_t>())
        throw DataError("checksum mismatch for " + path.string());
    }
    WorkspaceEntry e;
    e.workspace = load_workspace(root / f.at("workspace").get<std::string>());
    e.grid = load_grid(root / f.at("grid").get<std::string>());
    if (f.contains("train_samples"))
      e.train_samples = load_samples_csv(root / f.at("train_samples").get<std::string>());
    e.test_samples = load_samples_csv(root / f.at("test_samples").get<std::string>());
    if (f.at("role").get<std::string>() == "train")
      c.train.push_back(std::move(e));
    else
      c.unseen.push_back(std::move(e));
  }
  return c;
}

}  // namespace prmgate
