#pragma once

#include <nlohmann/json.hpp>

#include "prmgate/geometry/types.hpp"
#include "prmgate/geometry/workspace_gen.hpp"
#include "prmgate/io/binary.hpp"

namespace prmgate {

inline nlohmann::json workspace_to_json(const Workspace& w) {
  nlohmann::json j;
  j["class"] = to_string(w.cls);
  j["seed"] = w.seed;
  const int dim = w.dim();
  j["extents"] = std::vector<double>(w.extents.data(), w.extents.data() + dim);
  auto& obs = j["obstacles"] = nlohmann::json::array();
  for (const auto& b : w.obstacles) {
    obs.push_back({{"min", std::vector<double>(b.min.data(), b.min.data() + dim)},
                   {"max", std::vector<double>(b.max.data(), b.max.data() + dim)}});
  }
  return j;
}

inline Workspace workspace_from_json(const nlohmann::json& j) {
  Workspace w;
  w.cls = workspace_class_from_string(j.at("class").get<std::string>());
  w.seed = j.at("seed").get<std::uint64_t>();
  const auto ext = j.at("extents").get<std::vector<double>>();
  for (std::size_t a = 0; a < ext.size(); ++a) w.extents[static_cast<int>(a)] = ext[a];
  for (const auto& jb : j.at("obstacles")) {
    AxisAlignedBox b;
    const auto mn = jb.at("min").get<std::vector<double>>();
    const auto mx = jb.at("max").get<std::vector<double>>();
    for (std::size_t a = 0; a < mn.size(); ++a) {
      b.min[static_cast<int>(a)] = mn[a];
      b.max[static_cast<int>(a)] = mx[a];
      if (!(b.min[static_cast<int>(a)] < b.max[static_cast<int>(a)]))
        throw IoError("degenerate obstacle box in workspace json");
    }
    w.obstacles.push_back(b);
  }
  for (const auto& b : w.obstacles)
    for (int a = 0; a < w.dim(); ++a)
      if (b.min[a] < 0 || b.max[a] > w.extents[a])
        throw IoError("obstacle outside workspace extents");
  return w;
}

inline void save_workspace(const Workspace& w, const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) { os << workspace_to_json(w).dump(2) << "\n"; });
}

inline Workspace load_workspace(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  is >> j;
  return workspace_from_json(j);
}

// Grid file: magic, version, dim, dims, "x-fastest" order tag, f32 payload.
inline void save_grid(const OccupancyGrid& g, std::ostream& os) {
  os.write("PGOG", 4);
  io::write_pod<std::uint32_t>(os, 1);
  io::write_pod<std::uint8_t>(os, static_cast<std::uint8_t>(g.dim));
  for (int d : g.dims) io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(d));
  io::write_string(os, "x-fastest");
  os.write(reinterpret_cast<const char*>(g.values.data()),
           static_cast<std::streamsize>(g.values.size() * sizeof(float)));
}

inline OccupancyGrid load_grid(std::istream& is) {
  io::expect_magic(is, "PGOG", "occupancy grid");
  const auto version = io::read_pod<std::uint32_t>(is);
  if (version != 1) throw IoError("unsupported grid format version");
  OccupancyGrid g;
  g.dim = io::read_pod<std::uint8_t>(is);
  for (int a = 0; a < 3; ++a) g.dims[a] = static_cast<int>(io::read_pod<std::uint32_t>(is));
  if (io::read_string(is) != "x-fastest") throw IoError("unknown grid flattening order");
  g.values.resize(g.size());
  is.read(reinterpret_cast<char*>(g.values.data()),
          static_cast<std::streamsize>(g.values.size() * sizeof(float)));
  if (!is) throw IoError("truncated grid payload");
  return g;
}

inline void save_grid(const OccupancyGrid& g, const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) { save_grid(g, os); });
}

inline OccupancyGrid load_grid(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return load_grid(is);
}

}  // namespace prmgate
