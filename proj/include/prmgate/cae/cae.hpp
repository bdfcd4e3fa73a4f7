#pragma once

#include <algorithm>
#include <functional>
#include <numeric>

#include "prmgate/geometry/types.hpp"
#include "prmgate/nn/adagrad.hpp"
#include "prmgate/nn/adam.hpp"
#include "prmgate/nn/losses.hpp"
#include "prmgate/nn/network.hpp"
#include "prmgate/nn/weights_io.hpp"

namespace prmgate {

enum class CaeArch { TwoDS, ThreeDO, ThreeDOReduced, ThreeDC };

inline const char* to_string(CaeArch a) {
  switch (a) {
    case CaeArch::TwoDS: return "2DS";
    case CaeArch::ThreeDO: return "3DO";
    case CaeArch::ThreeDOReduced: return "3DO-reduced";
    case CaeArch::ThreeDC: return "3DC";
  }
  return "?";
}

inline CaeArch cae_arch_from_string(const std::string& s) {
  if (s == "2DS") return CaeArch::TwoDS;
  if (s == "3DO") return CaeArch::ThreeDO;
  if (s == "3DO-reduced") return CaeArch::ThreeDOReduced;
  if (s == "3DC") return CaeArch::ThreeDC;
  throw std::invalid_argument("unknown CAE architecture: " + s);
}

// Encoder layer widths, input first, latent last. Decoders mirror these.
inline std::vector<int> cae_encoder_dims(CaeArch arch) {
  switch (arch) {
    case CaeArch::TwoDS: return {961, 512, 256, 128, 64, 32, 12};
    case CaeArch::ThreeDO: return {10086, 5043, 3125, 1600, 800, 400, 200, 100, 50};
    case CaeArch::ThreeDOReduced: return {2646, 1300, 650, 300, 150, 50};
    case CaeArch::ThreeDC: return {1331, 1000, 800, 600, 400, 200, 100, 50};
  }
  return {};
}

struct CaeModel {
  CaeArch arch = CaeArch::TwoDS;
  NetworkParams encoder;
  NetworkParams decoder;

  int input_dim() const { return static_cast<int>(encoder.input_dim()); }
  int latent_dim() const { return static_cast<int>(encoder.output_dim()); }
};

// Dropout is an MLP training device only; CAE layers carry p = 0.
inline CaeModel build_cae(CaeArch arch, std::uint64_t seed) {
  CaeModel m;
  m.arch = arch;
  auto dims = cae_encoder_dims(arch);
  m.encoder = make_network(dims, 0.0, derive_seed(seed, "cae-encoder"));
  std::reverse(dims.begin(), dims.end());
  m.decoder = make_network(dims, 0.0, derive_seed(seed, "cae-decoder"));
  return m;
}

using LatentCode = Eigen::VectorXd;

inline LatentCode encode(const CaeModel& m, const OccupancyGrid& grid) {
  return forward_vec(m.encoder, grid.as_vector());
}

inline Eigen::VectorXd reconstruct(const CaeModel& m, const OccupancyGrid& grid) {
  return forward_vec(m.decoder, encode(m, grid));
}

// Fraction of cells whose thresholded reconstruction (>= 0 maps to +1)
// matches the input grid.
inline double reconstruction_accuracy(const CaeModel& m, const OccupancyGrid& grid) {
  const Eigen::VectorXd out = reconstruct(m, grid);
  std::size_t match = 0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const float predicted = out[i] >= 0.0 ? 1.0f : -1.0f;
    if (predicted == grid.values[static_cast<std::size_t>(i)]) ++match;
  }
  return static_cast<double>(match) / static_cast<double>(out.size());
}

// Optional source of fresh training inputs drawn from the same workspace
// distribution as the corpus; consulted on three of every four minibatches to
// keep the decoder from memorizing a small grid set.
using GridSource = std::function<Eigen::VectorXd(Rng&)>;

struct CaeTrainConfig {
  double lr = 2e-3;
  double lr_min = 1e-5;  // cosine-annealed floor
  double lambda = 0.001;
  int steps = 32000;  // total minibatch updates
  int batch_size = 30;
  std::uint64_t seed = 0;
  GridSource augment;
};

struct TrainHistory {
  std::vector<double> loss;  // mean batch loss per 100-step window
};

// Minimizes the reconstruction objective with Adam under a cosine learning
// rate schedule. Plain Adagrad at a fixed rate diverges on the deep encoder
// stacks: the first update moves every weight by the full learning rate, the
// saturated activations then inflate the accumulators, and training stalls at
// the base rate. Deterministic given cfg.seed (batch order and augmentation
// draw from seed-derived streams).
inline TrainHistory train_cae(CaeModel& m, const std::vector<OccupancyGrid>& grids,
                              const CaeTrainConfig& cfg) {
  if (grids.empty()) throw std::invalid_argument("train_cae: empty training set");
  for (const auto& g : grids)
    if (static_cast<int>(g.size()) != m.input_dim())
      throw std::invalid_argument("grid size does not match CAE input dim");

  Eigen::MatrixXd data(m.input_dim(), static_cast<Eigen::Index>(grids.size()));
  for (std::size_t i = 0; i < grids.size(); ++i)
    data.col(static_cast<Eigen::Index>(i)) = grids[i].as_vector();

  AdamState enc_state = AdamState::zeros_like(m.encoder);
  AdamState dec_state = AdamState::zeros_like(m.decoder);
  Rng batch_rng(derive_seed(cfg.seed, "cae-batch"));
  Rng aug_rng(derive_seed(cfg.seed, "cae-aug"));

  std::vector<int> order(grids.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t pos = order.size();  // force an initial shuffle

  const auto batch = std::min<std::size_t>(cfg.batch_size, grids.size());
  TrainHistory history;
  double window_sum = 0;
  int window_count = 0;
  for (int step = 0; step < cfg.steps; ++step) {
    Eigen::MatrixXd X(m.input_dim(), static_cast<Eigen::Index>(batch));
    if (cfg.augment && step % 4 < 3) {
      for (std::size_t i = 0; i < batch; ++i)
        X.col(static_cast<Eigen::Index>(i)) = cfg.augment(aug_rng);
    } else {
      for (std::size_t i = 0; i < batch; ++i) {
        if (pos >= order.size()) {
          std::shuffle(order.begin(), order.end(), batch_rng);
          pos = 0;
        }
        X.col(static_cast<Eigen::Index>(i)) = data.col(order[pos++]);
      }
    }

    ForwardCache enc_cache, dec_cache;
    const Eigen::MatrixXd z = forward(m.encoder, X, Mode::Train, nullptr, &enc_cache);
    const Eigen::MatrixXd xhat = forward(m.decoder, z, Mode::Train, nullptr, &dec_cache);

    window_sum += cae_loss(X, xhat, m.encoder, cfg.lambda);
    ++window_count;

    Gradients dec_grads = backward(m.decoder, dec_cache, cae_loss_grad(X, xhat));
    Gradients enc_grads = backward(m.encoder, enc_cache, dec_grads.dX);
    for (std::size_t l = 0; l < m.encoder.layers.size(); ++l)
      enc_grads.dW[l] += 2.0 * cfg.lambda * m.encoder.layers[l].W;

    const double lr = cosine_lr(cfg.lr, cfg.lr_min, step, cfg.steps);
    adam_step(m.decoder, dec_grads, dec_state, lr);
    adam_step(m.encoder, enc_grads, enc_state, lr);

    if ((step + 1) % 100 == 0 || step + 1 == cfg.steps) {
      history.loss.push_back(window_sum / window_count);
      window_sum = 0;
      window_count = 0;
    }
  }
  return history;
}

inline void save_cae(const CaeModel& m, const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) {
    os.write("PGCA", 4);
    io::write_pod<std::uint32_t>(os, 1);
    io::write_string(os, to_string(m.arch));
    save_network(m.encoder, os);
    save_network(m.decoder, os);
  });
}

inline CaeModel load_cae(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  io::expect_magic(is, "PGCA", "CAE model");
  if (io::read_pod<std::uint32_t>(is) != 1)
    throw IoError("unsupported CAE model version");
  CaeModel m;
  m.arch = cae_arch_from_string(io::read_string(is));
  m.encoder = load_network(is);
  m.decoder = load_network(is);
  return m;
}

}  // namespace prmgate
