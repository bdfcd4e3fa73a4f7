#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

std::string cli() {
  const char* env = std::getenv("PRMGATE_CLI");
  REQUIRE(env != nullptr);
  return env;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = cli() + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct Workdir {
  fs::path path;
  Workdir() : path(fs::temp_directory_path() / "prmgate_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  Workdir dir;
  const auto log = dir.path / "log.txt";
  CHECK(run("", log) == 2);                        // missing subcommand
  CHECK(run("frobnicate", log) == 2);              // unknown subcommand
  CHECK(run("gen --preset bogus --out " + (dir.path / "x").string(), log) == 2);
  CHECK(run("train-cae --out x.bin --corpus /nonexistent --bogus-flag", log) == 2);
  const std::string err = slurp(log);
  CHECK(err.rfind("error:", 0) == 0);  // one-line machine-parsable prefix
}

TEST_CASE("missing data exits with code 3") {
  Workdir dir;
  const auto log = dir.path / "log.txt";
  CHECK(run("train-cae --corpus " + (dir.path / "absent").string() + " --out " +
                (dir.path / "cae.bin").string(),
            log) == 3);
  CHECK(slurp(log).rfind("error:", 0) == 0);
}

TEST_CASE("end-to-end tiny pipeline through the CLI") {
  Workdir dir;
  const auto log = dir.path / "log.txt";
  const auto corpus = dir.path / "corpus";
  const auto cae = dir.path / "cae.bin";
  const auto mlp = dir.path / "mlp.bin";

  REQUIRE(run("gen --class 2DS --train-workspaces 5 --seen-test-workspaces 5 "
              "--unseen-workspaces 2 --samples-per-workspace 100 --seed 1 --out " +
                  corpus.string(),
              log) == 0);
  CHECK(fs::exists(corpus / "manifest.json"));
  CHECK(fs::exists(corpus / "grids" / "train_000.bin"));
  CHECK(fs::exists(corpus / "samples" / "train_004_test.csv"));
  CHECK_FALSE(fs::exists(corpus / "samples" / "unseen_000_train.csv"));

  REQUIRE(run("train-cae --corpus " + corpus.string() + " --cae-steps 20 --out " +
                  cae.string(),
              log) == 0);
  REQUIRE(run("train-mlp --corpus " + corpus.string() + " --cae " + cae.string() +
                  " --epochs 1 --mlp-fresh-workspaces 0 --out " + mlp.string(),
              log) == 0);
  REQUIRE(fs::exists(cae));
  REQUIRE(fs::exists(mlp));

  const auto eval_csv = dir.path / "eval.csv";
  REQUIRE(run("eval --corpus " + corpus.string() + " --cae " + cae.string() +
                  " --mlp " + mlp.string() + " --out " + eval_csv.string(),
              log) == 0);
  const std::string csv = slurp(eval_csv);
  CHECK(csv.rfind("model,split,metric,value", 0) == 0);
  CHECK(csv.find("cae,seen,accuracy,") != std::string::npos);
  CHECK(csv.find("mlp,unseen,accuracy,") != std::string::npos);

  // a barely-trained MLP on balanced labels yields a plausible accuracy
  std::istringstream lines(csv);
  std::string line;
  bool found = false;
  while (std::getline(lines, line)) {
    if (line.rfind("mlp,seen,accuracy,", 0) == 0) {
      const double acc = std::stod(line.substr(line.rfind(',') + 1));
      CHECK(acc > 0.3);
      CHECK(acc <= 1.0);
      found = true;
    }
  }
  CHECK(found);

  // render a workspace with an overlaid roadmap
  const auto svg = dir.path / "scene.svg";
  REQUIRE(run("render --workspace " + (corpus / "workspaces" / "train_000.json").string() +
                  " --roadmap-samples 30 --out " + svg.string(),
              log) == 0);
  const std::string content = slurp(svg);
  CHECK(content.find("<svg") != std::string::npos);
  CHECK(content.find("<circle") != std::string::npos);  // roadmap nodes
}

TEST_CASE("PRMGATE_DATA_ROOT provides the default corpus root") {
  Workdir dir;
  const auto log = dir.path / "log.txt";
  const auto corpus = dir.path / "envcorpus";
  const std::string cmd =
      "PRMGATE_DATA_ROOT=" + corpus.string() + " " + cli() +
      " gen --class 2DS --train-workspaces 2 --seen-test-workspaces 1 "
      "--unseen-workspaces 1 --samples-per-workspace 20 >" + log.string() + " 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(corpus / "manifest.json"));
}
