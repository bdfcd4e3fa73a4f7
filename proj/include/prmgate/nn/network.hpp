#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "prmgate/core/rng.hpp"

namespace prmgate {

struct DenseLayer {
  Eigen::MatrixXd W;       // out x in
  Eigen::VectorXd b;       // out
  double slope = 0.25;     // learnable PReLU slope, one scalar per layer
  bool activation = true;  // false for linear output layers
  double dropout = 0.0;    // train-mode drop probability; 0 disables

  Eigen::Index in_dim() const { return W.cols(); }
  Eigen::Index out_dim() const { return W.rows(); }
};

struct NetworkParams {
  std::vector<DenseLayer> layers;

  Eigen::Index input_dim() const { return layers.front().in_dim(); }
  Eigen::Index output_dim() const { return layers.back().out_dim(); }
  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers)
      n += static_cast<std::size_t>(l.W.size() + l.b.size()) + 1;
    return n;
  }
};

// Layers `dims[0] -> dims[1] -> ... -> dims.back()`, PReLU plus dropout on
// hidden layers and a linear output layer. Weights uniform in
// +-sqrt(6/fan_in), biases zero, slopes 0.25.
inline NetworkParams make_network(const std::vector<int>& dims, double dropout,
                                  std::uint64_t seed) {
  if (dims.size() < 2) throw std::invalid_argument("network needs at least one layer");
  Rng rng(seed);
  NetworkParams net;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.W.resize(dims[l + 1], dims[l]);
    const double bound = std::sqrt(6.0 / dims[l]);
    for (Eigen::Index i = 0; i < layer.W.size(); ++i)
      layer.W.data()[i] = uniform_real(rng, -bound, bound);
    layer.b = Eigen::VectorXd::Zero(dims[l + 1]);
    const bool last = l + 2 == dims.size();
    layer.activation = !last;
    layer.dropout = last ? 0.0 : dropout;
    net.layers.push_back(std::move(layer));
  }
  return net;
}

enum class Mode { Train, Eval };

// Per-layer tensors cached by the forward pass for backpropagation.
// Columns are batch samples throughout.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;  // X fed to each layer
  std::vector<Eigen::MatrixXd> pre;     // Z = W X + b
  std::vector<Eigen::MatrixXd> masks;   // inverted-dropout factors (empty if unused)
  Eigen::MatrixXd output;
};

inline Eigen::MatrixXd forward(const NetworkParams& net, const Eigen::MatrixXd& X,
                               Mode mode, Rng* rng = nullptr,
                               ForwardCache* cache = nullptr) {
  if (X.rows() != net.input_dim())
    throw std::invalid_argument("input dim " + std::to_string(X.rows()) +
                                " does not match network input " +
                                std::to_string(net.input_dim()));
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
    cache->masks.clear();
  }
  Eigen::MatrixXd a = X;
  for (const DenseLayer& layer : net.layers) {
    if (cache) cache->inputs.push_back(a);
    Eigen::MatrixXd z = (layer.W * a).colwise() + layer.b;
    if (cache) cache->pre.push_back(z);
    if (layer.activation)
      a = z.unaryExpr([s = layer.slope](double v) { return v > 0 ? v : s * v; });
    else
      a = std::move(z);
    Eigen::MatrixXd mask;
    if (mode == Mode::Train && layer.dropout > 0.0) {
      if (!rng) throw std::invalid_argument("train-mode forward with dropout needs an rng");
      const double keep = 1.0 - layer.dropout;
      mask.resize(a.rows(), a.cols());
      for (Eigen::Index i = 0; i < mask.size(); ++i)
        mask.data()[i] = uniform_real(*rng, 0.0, 1.0) < layer.dropout ? 0.0 : 1.0 / keep;
      a = a.cwiseProduct(mask);
    }
    if (cache) cache->masks.push_back(std::move(mask));
  }
  if (cache) cache->output = a;
  return a;
}

inline Eigen::VectorXd forward_vec(const NetworkParams& net, const Eigen::VectorXd& x,
                                   Mode mode = Mode::Eval, Rng* rng = nullptr) {
  return forward(net, x, mode, rng);
}

struct Gradients {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;
  std::vector<double> dslope;
  Eigen::MatrixXd dX;  // gradient w.r.t. the network input
};

// Exact gradients of a scalar loss given dL/d(output). Dropout masks from the
// cached forward pass are held fixed.
inline Gradients backward(const NetworkParams& net, const ForwardCache& cache,
                          const Eigen::MatrixXd& dLdY) {
  const std::size_t L = net.layers.size();
  Gradients g;
  g.dW.resize(L);
  g.db.resize(L);
  g.dslope.assign(L, 0.0);

  Eigen::MatrixXd grad = dLdY;
  for (std::size_t l = L; l-- > 0;) {
    const DenseLayer& layer = net.layers[l];
    if (cache.masks[l].size() > 0) grad = grad.cwiseProduct(cache.masks[l]);
    if (layer.activation) {
      const Eigen::MatrixXd& z = cache.pre[l];
      double ds = 0;
      for (Eigen::Index i = 0; i < z.size(); ++i)
        if (z.data()[i] <= 0) ds += grad.data()[i] * z.data()[i];
      g.dslope[l] = ds;
      grad = grad.binaryExpr(z, [s = layer.slope](double gv, double zv) {
        return zv > 0 ? gv : s * gv;
      });
    }
    g.dW[l] = grad * cache.inputs[l].transpose();
    g.db[l] = grad.rowwise().sum();
    grad = layer.W.transpose() * grad;
  }
  g.dX = std::move(grad);
  return g;
}

}  // namespace prmgate
