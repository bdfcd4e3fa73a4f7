#pragma once

#include <cmath>

#include "prmgate/nn/network.hpp"

namespace prmgate {

inline double encoder_weight_penalty(const NetworkParams& encoder) {
  double s = 0;
  for (const auto& layer : encoder.layers) s += layer.W.squaredNorm();
  return s;
}

// Reconstruction objective: mean squared reconstruction error over the batch
// plus lambda times the sum of squared encoder weights (biases and decoder
// excluded). Columns of X / Xhat are batch samples.
inline double cae_loss(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Xhat,
                       const NetworkParams& encoder, double lambda) {
  if (X.cols() == 0) throw std::invalid_argument("cae_loss: empty batch");
  return (Xhat - X).squaredNorm() / static_cast<double>(X.cols()) +
         lambda * encoder_weight_penalty(encoder);
}

// d(cae_loss)/d(Xhat); the weight-penalty part is added directly to encoder
// weight gradients by the training loop.
inline Eigen::MatrixXd cae_loss_grad(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Xhat) {
  return 2.0 / static_cast<double>(X.cols()) * (Xhat - X);
}

inline Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const Eigen::VectorXd shifted = logits.array() - logits.maxCoeff();
  Eigen::VectorXd e = shifted.array().exp();
  return e / e.sum();
}

// -log softmax(logits)[label], max-subtraction stabilized.
inline double cross_entropy(const Eigen::VectorXd& logits, int label) {
  const double m = logits.maxCoeff();
  double lse = 0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) lse += std::exp(logits[i] - m);
  return std::log(lse) - (logits[label] - m);
}

// d(cross_entropy)/d(logits) = softmax - onehot.
inline Eigen::VectorXd cross_entropy_grad(const Eigen::VectorXd& logits, int label) {
  Eigen::VectorXd g = softmax(logits);
  g[label] -= 1.0;
  return g;
}

}  // namespace prmgate
