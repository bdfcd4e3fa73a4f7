#pragma once

#include <optional>

#include "prmgate/cae/cae.hpp"
#include "prmgate/geometry/config_space.hpp"
#include "prmgate/nn/adagrad.hpp"
#include "prmgate/nn/adam.hpp"
#include "prmgate/nn/losses.hpp"

namespace prmgate {

// Labels: 1 = valid (collision-free), 0 = invalid.
struct LabeledSample {
  Configuration config;
  int valid = 0;
};

struct MlpModel {
  std::string class_tag;  // "2DS", "3DO", "3DC"
  std::string robot_tag;
  NetworkParams net;

  int input_dim() const { return static_cast<int>(net.input_dim()); }
};

// (latent + dof) -> 128 -> 128 -> 2 for 2D, (latent + dof) -> 128 -> 128 ->
// 64 -> 2 for the 3D classes; PReLU (+ optional dropout) sandwiches on hidden
// layers, linear 2-logit output. The classifier effectively has to decode the
// latent code and read off the cells the robot covers, so it needs markedly
// more capacity than its input width suggests; narrow tapered stacks plateau
// well below the accuracy the rest of the pipeline assumes.
inline MlpModel build_mlp(WorkspaceClass cls, const RobotModel& robot, int latent_dim,
                          std::uint64_t seed, double dropout = 0.0) {
  std::vector<int> dims;
  dims.push_back(latent_dim + robot.dof);
  if (cls == WorkspaceClass::TwoDS)
    dims.insert(dims.end(), {128, 128, 2});
  else
    dims.insert(dims.end(), {128, 128, 64, 2});
  MlpModel m;
  m.class_tag = to_string(cls);
  m.robot_tag = robot.name;
  m.net = make_network(dims, dropout, seed);
  return m;
}

inline Eigen::VectorXd mlp_input(const LatentCode& z, const Eigen::VectorXd& q_norm) {
  Eigen::VectorXd x(z.size() + q_norm.size());
  x << z, q_norm;
  return x;
}

struct Prediction {
  double p_valid = 0;
  bool valid = false;
};

inline Prediction predict(const MlpModel& m, const LatentCode& z,
                          const Eigen::VectorXd& q_norm) {
  const Eigen::VectorXd logits = forward_vec(m.net, mlp_input(z, q_norm));
  const double p_valid = softmax(logits)[1];
  return {p_valid, p_valid >= 0.5};
}

struct MlpTrainItem {
  Eigen::VectorXd input;  // latent code concatenated with normalized config
  int label = 0;
};

struct MlpTrainConfig {
  double lr = 1e-3;
  double lr_min = 1e-5;     // cosine-annealed floor
  double pos_weight = 1.5;  // extra loss weight on the valid class; keeps the
                            // gate biased toward admitting valid samples
  int epochs = 40;
  int batch_size = 10;
  bool standardize = true;  // whiten inputs, then fold mean/scale into layer 0
  std::uint64_t seed = 0;
};

struct MlpHistory {
  std::vector<double> epoch_loss;
  double final_train_accuracy = 0;  // eval-mode accuracy on the training set
};

// Minimizes weighted cross-entropy with Adam under a cosine learning rate
// schedule. Inputs are standardized feature-wise for training and the affine
// correction is folded back into the first layer afterwards, so the saved
// model consumes raw (latent, normalized-config) inputs. Deterministic given
// cfg.seed.
inline MlpHistory train_mlp(MlpModel& m, const std::vector<MlpTrainItem>& data,
                            const MlpTrainConfig& cfg) {
  if (data.empty()) throw std::invalid_argument("train_mlp: empty training set");
  for (const auto& item : data)
    if (item.input.size() != m.net.input_dim())
      throw std::invalid_argument("MLP training item has wrong input dim");

  const Eigen::Index dim = m.net.input_dim();
  Eigen::MatrixXd X_all(dim, static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i)
    X_all.col(static_cast<Eigen::Index>(i)) = data[i].input;

  Eigen::VectorXd mu = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sigma = Eigen::VectorXd::Ones(dim);
  if (cfg.standardize) {
    mu = X_all.rowwise().mean();
    X_all.colwise() -= mu;
    sigma = (X_all.cwiseAbs2().rowwise().mean()).cwiseSqrt().cwiseMax(1e-8);
    X_all.array().colwise() /= sigma.array();
  }

  AdamState state = AdamState::zeros_like(m.net);
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng dropout_rng(derive_seed(cfg.seed, "mlp-dropout"));

  const long batches_per_epoch =
      static_cast<long>((data.size() + cfg.batch_size - 1) / cfg.batch_size);
  const long total_steps = static_cast<long>(cfg.epochs) * batches_per_epoch;
  long step = 0;

  MlpHistory history;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(cfg.seed, "mlp-epoch", static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const auto count = std::min<std::size_t>(cfg.batch_size, order.size() - start);
      Eigen::MatrixXd X(dim, static_cast<Eigen::Index>(count));
      std::vector<int> labels(count);
      for (std::size_t i = 0; i < count; ++i) {
        X.col(static_cast<Eigen::Index>(i)) = X_all.col(order[start + i]);
        labels[i] = data[order[start + i]].label;
      }

      ForwardCache cache;
      const Eigen::MatrixXd logits = forward(m.net, X, Mode::Train, &dropout_rng, &cache);
      Eigen::MatrixXd dLdY(logits.rows(), logits.cols());
      double loss = 0;
      for (std::size_t i = 0; i < count; ++i) {
        const Eigen::Index c = static_cast<Eigen::Index>(i);
        const double w = labels[i] == 1 ? cfg.pos_weight : 1.0;
        loss += w * cross_entropy(logits.col(c), labels[i]);
        dLdY.col(c) = w * cross_entropy_grad(logits.col(c), labels[i]) /
                      static_cast<double>(count);
      }
      loss_sum += loss / static_cast<double>(count);
      ++batches;

      const Gradients grads = backward(m.net, cache, dLdY);
      adam_step(m.net, grads, state, cosine_lr(cfg.lr, cfg.lr_min, step, total_steps));
      ++step;
    }
    history.epoch_loss.push_back(loss_sum / batches);
  }

  std::size_t correct = 0;
  const Eigen::MatrixXd logits = forward(m.net, X_all, Mode::Eval, nullptr, nullptr);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    if ((logits(1, c) >= logits(0, c) ? 1 : 0) == data[i].label) ++correct;
  }
  history.final_train_accuracy = static_cast<double>(correct) / data.size();

  if (cfg.standardize) {
    auto& l0 = m.net.layers[0];
    const Eigen::VectorXd inv = sigma.cwiseInverse();
    l0.b -= l0.W * inv.cwiseProduct(mu);
    l0.W = l0.W * inv.asDiagonal();
  }
  return history;
}

// Positive class = valid. Rates are empty when the corresponding class is
// absent from the evaluation set.
struct EvalMetrics {
  double accuracy = 0;
  std::optional<double> tpr;
  std::optional<double> tnr;
};

inline EvalMetrics evaluate(const MlpModel& m, const std::vector<MlpTrainItem>& items) {
  if (items.empty()) throw std::invalid_argument("evaluate: empty set");
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (const auto& item : items) {
    const bool predicted = softmax(forward_vec(m.net, item.input))[1] >= 0.5;
    if (item.label == 1)
      predicted ? ++tp : ++fn;
    else
      predicted ? ++fp : ++tn;
  }
  EvalMetrics e;
  e.accuracy = static_cast<double>(tp + tn) / items.size();
  if (tp + fn > 0) e.tpr = static_cast<double>(tp) / (tp + fn);
  if (tn + fp > 0) e.tnr = static_cast<double>(tn) / (tn + fp);
  return e;
}

// Fixed arithmetic cost of one prediction, independent of obstacle count:
// multiply-adds of the affine layers plus activation and softmax work.
inline std::size_t mlp_flops(const MlpModel& m) {
  std::size_t flops = 0;
  for (const auto& layer : m.net.layers)
    flops += 2 * static_cast<std::size_t>(layer.W.size()) +
             static_cast<std::size_t>(layer.b.size());
  return flops + 8;  // softmax over the two logits
}

inline void save_mlp(const MlpModel& m, const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) {
    os.write("PGML", 4);
    io::write_pod<std::uint32_t>(os, 1);
    io::write_string(os, m.class_tag);
    io::write_string(os, m.robot_tag);
    save_network(m.net, os);
  });
}

inline MlpModel load_mlp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  io::expect_magic(is, "PGML", "MLP model");
  if (io::read_pod<std::uint32_t>(is) != 1)
    throw IoError("unsupported MLP model version");
  MlpModel m;
  m.class_tag = io::read_string(is);
  m.robot_tag = io::read_string(is);
  m.net = load_network(is);
  return m;
}

}  // namespace prmgate
