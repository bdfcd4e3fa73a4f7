#pragma once

#include "prmgate/io/binary.hpp"
#include "prmgate/nn/network.hpp"

namespace prmgate {

// Network weight block: header (dims, slopes, dropout ps, activation flags)
// followed by little-endian float32 payloads, one W then b per layer.
inline void save_network(const NetworkParams& net, std::ostream& os) {
  os.write("PGNW", 4);
  io::write_pod<std::uint32_t>(os, 1);  // format version
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(net.layers.size()));
  for (const auto& layer : net.layers) {
    io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(layer.in_dim()));
    io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(layer.out_dim()));
    io::write_pod<float>(os, static_cast<float>(layer.slope));
    io::write_pod<float>(os, static_cast<float>(layer.dropout));
    io::write_pod<std::uint8_t>(os, layer.activation ? 1 : 0);
  }
  for (const auto& layer : net.layers) {
    for (Eigen::Index i = 0; i < layer.W.size(); ++i)
      io::write_pod<float>(os, static_cast<float>(layer.W.data()[i]));
    for (Eigen::Index i = 0; i < layer.b.size(); ++i)
      io::write_pod<float>(os, static_cast<float>(layer.b.data()[i]));
  }
}

inline NetworkParams load_network(std::istream& is) {
  io::expect_magic(is, "PGNW", "network weights");
  if (io::read_pod<std::uint32_t>(is) != 1)
    throw IoError("unsupported weight format version");
  const auto count = io::read_pod<std::uint32_t>(is);
  NetworkParams net;
  net.layers.resize(count);
  for (auto& layer : net.layers) {
    const auto in = io::read_pod<std::uint32_t>(is);
    const auto out = io::read_pod<std::uint32_t>(is);
    layer.W.resize(out, in);
    layer.b.resize(out);
    layer.slope = io::read_pod<float>(is);
    layer.dropout = io::read_pod<float>(is);
    layer.activation = io::read_pod<std::uint8_t>(is) != 0;
  }
  for (auto& layer : net.layers) {
    for (Eigen::Index i = 0; i < layer.W.size(); ++i)
      layer.W.data()[i] = io::read_pod<float>(is);
    for (Eigen::Index i = 0; i < layer.b.size(); ++i)
      layer.b.data()[i] = io::read_pod<float>(is);
  }
  return net;
}

inline void save_network(const NetworkParams& net, const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) { save_network(net, os); });
}

inline NetworkParams load_network(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return load_network(is);
}

}  // namespace prmgate
