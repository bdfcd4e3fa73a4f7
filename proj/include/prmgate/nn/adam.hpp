#pragma once

#include <cmath>

#include "prmgate/nn/network.hpp"

namespace prmgate {

// First/second moment estimates for Adam, one entry per layer parameter.
struct AdamState {
  std::vector<Eigen::MatrixXd> mW, vW;
  std::vector<Eigen::VectorXd> mb, vb;
  std::vector<double> mslope, vslope;
  long t = 0;

  static AdamState zeros_like(const NetworkParams& net) {
    AdamState s;
    for (const auto& layer : net.layers) {
      s.mW.push_back(Eigen::MatrixXd::Zero(layer.W.rows(), layer.W.cols()));
      s.vW.push_back(Eigen::MatrixXd::Zero(layer.W.rows(), layer.W.cols()));
      s.mb.push_back(Eigen::VectorXd::Zero(layer.b.size()));
      s.vb.push_back(Eigen::VectorXd::Zero(layer.b.size()));
      s.mslope.push_back(0.0);
      s.vslope.push_back(0.0);
    }
    return s;
  }
};

// Standard bias-corrected Adam update:
//   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g^2
//   param -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
inline void adam_step(NetworkParams& net, const Gradients& g, AdamState& state,
                      double lr, double beta1 = 0.9, double beta2 = 0.999,
                      double eps = 1e-8) {
  ++state.t;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    state.mW[l] = beta1 * state.mW[l] + (1.0 - beta1) * g.dW[l];
    state.vW[l].array() =
        beta2 * state.vW[l].array() + (1.0 - beta2) * g.dW[l].array().square();
    net.layers[l].W.array() -=
        lr * (state.mW[l].array() / c1) / ((state.vW[l].array() / c2).sqrt() + eps);

    state.mb[l] = beta1 * state.mb[l] + (1.0 - beta1) * g.db[l];
    state.vb[l].array() =
        beta2 * state.vb[l].array() + (1.0 - beta2) * g.db[l].array().square();
    net.layers[l].b.array() -=
        lr * (state.mb[l].array() / c1) / ((state.vb[l].array() / c2).sqrt() + eps);

    state.mslope[l] = beta1 * state.mslope[l] + (1.0 - beta1) * g.dslope[l];
    state.vslope[l] = beta2 * state.vslope[l] + (1.0 - beta2) * g.dslope[l] * g.dslope[l];
    net.layers[l].slope -=
        lr * (state.mslope[l] / c1) / (std::sqrt(state.vslope[l] / c2) + eps);
  }
}

// Cosine annealing from lr_max to lr_min over total steps; step is 0-based.
inline double cosine_lr(double lr_max, double lr_min, long step, long total) {
  if (total <= 1) return lr_max;
  const double phase = static_cast<double>(step) / static_cast<double>(total - 1);
  return lr_min + 0.5 * (lr_max - lr_min) * (1.0 + std::cos(phase * 3.14159265358979323846));
}

}  // namespace prmgate
