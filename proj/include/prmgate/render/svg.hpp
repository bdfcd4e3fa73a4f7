#pragma once

#include <sstream>

#include "prmgate/geometry/grid.hpp"
#include "prmgate/io/binary.hpp"
#include "prmgate/planner/roadmap.hpp"

namespace prmgate {

// 2D scenes render directly; 3D scenes render as one panel per z slice of the
// occupancy grid.
inline std::string render_svg(const Workspace& w, const Roadmap* roadmap = nullptr,
                              const Path* path = nullptr) {
  std::ostringstream os;
  const double scale = 20.0;

  if (w.dim() == 2) {
    const double width = w.extents[0] * scale, height = w.extents[1] * scale;
    // y flipped so the origin sits bottom-left
    auto px = [&](double x) { return x * scale; };
    auto py = [&](double y) { return height - y * scale; };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "  <rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (const auto& b : w.obstacles)
      os << "  <rect x=\"" << px(b.min.x()) << "\" y=\"" << py(b.max.y()) << "\" width=\""
         << (b.max.x() - b.min.x()) * scale << "\" height=\""
         << (b.max.y() - b.min.y()) * scale << "\" fill=\"#888\"/>\n";
    if (roadmap) {
      for (const auto& e : roadmap->edges) {
        const auto& a = roadmap->nodes[static_cast<std::size_t>(e.u)];
        const auto& b = roadmap->nodes[static_cast<std::size_t>(e.v)];
        const char* color = e.state == EdgeState::Invalid ? "#fbb" : "#9cf";
        os << "  <line x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1]) << "\" x2=\""
           << px(b[0]) << "\" y2=\"" << py(b[1]) << "\" stroke=\"" << color
           << "\" stroke-width=\"1\"/>\n";
      }
      for (const auto& n : roadmap->nodes)
        os << "  <circle cx=\"" << px(n[0]) << "\" cy=\"" << py(n[1])
           << "\" r=\"2\" fill=\"#36c\"/>\n";
    }
    if (path && path->waypoints.size() > 1) {
      os << "  <polyline fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"";
      for (const auto& q : path->waypoints) os << px(q[0]) << "," << py(q[1]) << " ";
      os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
  }

  const OccupancyGrid g = rasterize(w);
  const double cell = 8.0;
  const double panel_w = g.dims[0] * cell, panel_h = g.dims[1] * cell;
  const double gap = 10.0;
  const double width = g.dims[2] * (panel_w + gap);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << panel_h + 20 << "\">\n";
  for (int z = 0; z < g.dims[2]; ++z) {
    const double ox = z * (panel_w + gap);
    os << "  <rect x=\"" << ox << "\" y=\"0\" width=\"" << panel_w << "\" height=\""
       << panel_h << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x)
        if (g.at(x, y, z) > 0)
          os << "  <rect x=\"" << ox + x * cell << "\" y=\""
             << panel_h - (y + 1) * cell << "\" width=\"" << cell << "\" height=\""
             << cell << "\" fill=\"#888\"/>\n";
    os << "  <text x=\"" << ox + 2 << "\" y=\"" << panel_h + 14
       << "\" font-size=\"10\">z=" << z << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void save_svg(const std::string& svg, const std::filesystem::path& path) {
  io::atomic_write(path, [&](std::ostream& os) { os << svg; });
}

}  // namespace prmgate
