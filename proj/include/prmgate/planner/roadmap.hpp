#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>

#include "prmgate/geometry/config_space.hpp"

namespace prmgate {

enum class EdgeState { Unchecked, Valid, Invalid };

// Straight-line edge check; supplied by the caller so roadmap construction
// stays lazy.
using EdgeValidator = std::function<bool(const Configuration&, const Configuration&)>;

struct Roadmap {
  struct Edge {
    int u = 0, v = 0;
    double weight = 0;
    EdgeState state = EdgeState::Unchecked;
  };

  std::vector<Configuration> nodes;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adjacency;  // edge indices per node

  void add_edge(int u, int v, double weight) {
    if (u == v || weight <= 0) return;
    const int lo = std::min(u, v), hi = std::max(u, v);
    for (int e : adjacency[u])
      if (edges[e].u == lo && edges[e].v == hi) return;  // already connected
    edges.push_back({std::min(u, v), std::max(u, v), weight, EdgeState::Unchecked});
    adjacency[u].push_back(static_cast<int>(edges.size()) - 1);
    adjacency[v].push_back(static_cast<int>(edges.size()) - 1);
  }
};

inline std::vector<int> k_nearest(const ConfigSpace& cspace,
                                  const std::vector<Configuration>& nodes,
                                  const Configuration& q, int k, int skip = -1) {
  std::vector<std::pair<double, int>> dists;
  dists.reserve(nodes.size());
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (i == skip) continue;
    dists.emplace_back(cspace.distance(q, nodes[i]), i);
  }
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(k), dists.size());
  std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(count),
                    dists.end());
  std::vector<int> result;
  for (std::size_t i = 0; i < count; ++i) result.push_back(dists[i].second);
  return result;
}

// Connects every node to its k nearest neighbors under normalized C-space
// distance. Edges start unchecked; validation happens lazily at query time.
inline Roadmap build_roadmap(const std::vector<Configuration>& samples, int k,
                             const ConfigSpace& cspace) {
  Roadmap r;
  r.nodes = samples;
  r.adjacency.resize(samples.size());
  for (int i = 0; i < static_cast<int>(samples.size()); ++i)
    for (int j : k_nearest(cspace, r.nodes, r.nodes[i], k, i))
      r.add_edge(i, j, cspace.distance(r.nodes[i], r.nodes[j]));
  return r;
}

// Adds one node connected to its k nearest existing nodes; returns its index.
inline int add_node(Roadmap& r, const Configuration& q, int k, const ConfigSpace& cspace) {
  const auto neighbors = k_nearest(cspace, r.nodes, q, k);
  r.nodes.push_back(q);
  r.adjacency.emplace_back();
  const int idx = static_cast<int>(r.nodes.size()) - 1;
  for (int j : neighbors) r.add_edge(idx, j, cspace.distance(q, r.nodes[j]));
  return idx;
}

struct Path {
  std::vector<Configuration> waypoints;
  double length = 0;
  bool exact_verified = false;
};

namespace detail {

// Dijkstra over edges not yet marked invalid; ties broken by smaller node
// index. Returns the node sequence or empty if goal is unreachable.
inline std::vector<int> shortest_path(const Roadmap& r, int start, int goal) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(r.nodes.size(), inf);
  std::vector<int> prev(r.nodes.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[start] = 0;
  queue.emplace(0.0, start);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (u == goal) break;
    for (int e : r.adjacency[u]) {
      const auto& edge = r.edges[e];
      if (edge.state == EdgeState::Invalid) continue;
      const int v = edge.u == u ? edge.v : edge.u;
      const double nd = d + edge.weight;
      if (nd < dist[v] || (nd == dist[v] && u < prev[v])) {
        dist[v] = nd;
        prev[v] = u;
        queue.emplace(nd, v);
      }
    }
  }
  if (dist[goal] == inf) return {};
  std::vector<int> path;
  for (int u = goal; u != -1; u = prev[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

inline int edge_between(const Roadmap& r, int u, int v) {
  for (int e : r.adjacency[u])
    if ((r.edges[e].u == u && r.edges[e].v == v) || (r.edges[e].u == v && r.edges[e].v == u))
      return e;
  return -1;
}

}  // namespace detail

// Lazy-validation query between two roadmap nodes: search, validate the
// candidate path's unchecked edges, knock out invalid ones, re-search. Each
// round permanently invalidates at least one edge, so termination is bounded
// by the edge count.
inline std::optional<Path> query_nodes(Roadmap& r, int start, int goal,
                                       const EdgeValidator& validator) {
  if (start == goal) {
    Path p;
    p.waypoints = {r.nodes[start]};
    return p;
  }
  for (;;) {
    const auto node_path = detail::shortest_path(r, start, goal);
    if (node_path.empty()) return std::nullopt;

    bool all_valid = true;
    for (std::size_t i = 0; i + 1 < node_path.size(); ++i) {
      const int e = detail::edge_between(r, node_path[i], node_path[i + 1]);
      auto& edge = r.edges[e];
      if (edge.state == EdgeState::Unchecked)
        edge.state = validator(r.nodes[edge.u], r.nodes[edge.v]) ? EdgeState::Valid
                                                                 : EdgeState::Invalid;
      if (edge.state == EdgeState::Invalid) {
        all_valid = false;
        break;
      }
    }
    if (!all_valid) continue;

    Path p;
    double length = 0;
    for (std::size_t i = 0; i + 1 < node_path.size(); ++i)
      length += r.edges[detail::edge_between(r, node_path[i], node_path[i + 1])].weight;
    for (int u : node_path) p.waypoints.push_back(r.nodes[u]);
    p.length = length;
    return p;
  }
}

// Connects start and goal into (a copy of the caller's) roadmap and runs the
// lazy query.
inline std::optional<Path> query(Roadmap& r, const Configuration& start,
                                 const Configuration& goal, int k,
                                 const ConfigSpace& cspace, const EdgeValidator& validator) {
  if (cspace.distance(start, goal) == 0.0) {
    Path p;
    p.waypoints = {start};
    return p;
  }
  const int s = add_node(r, start, k, cspace);
  const int g = add_node(r, goal, k, cspace);
  return query_nodes(r, s, g, validator);
}

}  // namespace prmgate
