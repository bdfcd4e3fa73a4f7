#pragma once

#include "prmgate/nn/network.hpp"

namespace prmgate {

struct TrainConfig {
  double lr = 0.1;
  double lambda = 0.001;  // encoder weight penalty
  double dropout = 0.5;
  int epochs = 200;
  int batch_size = 10;
  std::uint64_t seed = 0;
  double adagrad_eps = 1e-10;
};

// Per-parameter accumulated squared gradients.
struct AdagradState {
  std::vector<Eigen::MatrixXd> gW;
  std::vector<Eigen::VectorXd> gb;
  std::vector<double> gslope;

  static AdagradState zeros_like(const NetworkParams& net) {
    AdagradState s;
    for (const auto& layer : net.layers) {
      s.gW.push_back(Eigen::MatrixXd::Zero(layer.W.rows(), layer.W.cols()));
      s.gb.push_back(Eigen::VectorXd::Zero(layer.b.size()));
      s.gslope.push_back(0.0);
    }
    return s;
  }
};

// state += g^2; param -= lr * g / (sqrt(state) + eps), elementwise.
inline void adagrad_step(NetworkParams& net, const Gradients& g, AdagradState& state,
                         double lr, double eps = 1e-10) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    state.gW[l].array() += g.dW[l].array().square();
    net.layers[l].W.array() -=
        lr * g.dW[l].array() / (state.gW[l].array().sqrt() + eps);
    state.gb[l].array() += g.db[l].array().square();
    net.layers[l].b.array() -=
        lr * g.db[l].array() / (state.gb[l].array().sqrt() + eps);
    state.gslope[l] += g.dslope[l] * g.dslope[l];
    net.layers[l].slope -= lr * g.dslope[l] / (std::sqrt(state.gslope[l]) + eps);
  }
}

}  // namespace prmgate
