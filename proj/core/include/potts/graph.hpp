#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace potts {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph on vertices 0..n-1.
//
// Edges are stored canonically (u < v, lexicographically sorted) and an
// EdgeId is the position in that list. Adjacency is kept in CSR form with
// every neighbor list sorted ascending, so every enumeration built on top of
// it is deterministic.
class Graph {
 public:
  Graph() = default;

  // Throws ArgumentError on self-loops, parallel edges or out of range ids.
  // Edge endpoints may be given in either order.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  // Edge ids aligned with neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {incident_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  // Same vertex set, edges mapped through `relabel` (relabel[old] = new).
  Graph relabeled(std::span<const Vertex> relabel) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices() == b.num_vertices() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::vector<EdgeId> incident_;
};

// BFS distance from v to the nearest vertex of `targets`; nullopt when no
// target is reachable.
std::optional<std::size_t> dist(const Graph& g, Vertex v, std::span<const Vertex> targets);

// Connected component labels (component ids in order of smallest vertex).
std::vector<std::uint32_t> connected_components(const Graph& g);

}  // namespace potts
