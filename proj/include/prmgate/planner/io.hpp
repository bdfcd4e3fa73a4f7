#pragma once

#include <nlohmann/json.hpp>

#include "prmgate/io/binary.hpp"
#include "prmgate/planner/roadmap.hpp"

namespace prmgate {

inline nlohmann::json path_to_json(const Path& p) {
  nlohmann::json j;
  j["length"] = p.length;
  j["exact_verified"] = p.exact_verified;
  auto& wps = j["configurations"] = nlohmann::json::array();
  for (const auto& q : p.waypoints)
    wps.push_back(std::vector<double>(q.data(), q.data() + q.size()));
  return j;
}

inline Path path_from_json(const nlohmann::json& j) {
  Path p;
  p.length = j.at("length").get<double>();
  p.exact_verified = j.at("exact_verified").get<bool>();
  for (const auto& jq : j.at("configurations")) {
    const auto v = jq.get<std::vector<double>>();
    p.waypoints.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(),
                                                            static_cast<Eigen::Index>(v.size())));
  }
  return p;
}

inline void save_path(const Path& p, const std::filesystem::path& file) {
  io::atomic_write(file, [&](std::ostream& os) { os << path_to_json(p).dump(2) << "\n"; });
}

inline Path load_path(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw IoError("cannot open " + file.string());
  nlohmann::json j;
  is >> j;
  return path_from_json(j);
}

}  // namespace prmgate
