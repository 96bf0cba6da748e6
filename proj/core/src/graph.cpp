#include "potts/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "potts/errors.hpp"

namespace potts {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)) {
  if (n > std::numeric_limits<Vertex>::max()) throw ArgumentError("too many vertices");
  for (auto& e : edges_) {
    if (e.u >= n || e.v >= n) {
      throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") references a vertex >= n=" + std::to_string(n));
    }
    if (e.u == e.v) throw ArgumentError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw ArgumentError("duplicate edge (" + std::to_string(dup->u) + "," +
                        std::to_string(dup->v) + ")");
  }

  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];

  neighbors_.resize(2 * edges_.size());
  incident_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    neighbors_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = id;
    neighbors_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = id;
  }
  std::vector<std::pair<Vertex, EdgeId>> scratch;
  for (std::size_t v = 0; v < n; ++v) {
    const auto lo = offsets_[v];
    const auto hi = offsets_[v + 1];
    scratch.clear();
    for (auto k = lo; k < hi; ++k) scratch.emplace_back(neighbors_[k], incident_[k]);
    std::sort(scratch.begin(), scratch.end());
    for (auto k = lo; k < hi; ++k) {
      neighbors_[k] = scratch[k - lo].first;
      incident_[k] = scratch[k - lo].second;
    }
  }
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return std::nullopt;
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

Graph Graph::relabeled(std::span<const Vertex> relabel) const {
  if (relabel.size() != num_vertices()) throw ArgumentError("relabeling has the wrong size");
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const auto& e : edges_) mapped.push_back({relabel[e.u], relabel[e.v]});
  return Graph(num_vertices(), std::move(mapped));
}

std::optional<std::size_t> dist(const Graph& g, Vertex v, std::span<const Vertex> targets) {
  if (v >= g.num_vertices()) throw ArgumentError("vertex out of range");
  if (targets.empty()) throw ArgumentError("dist: target set must be nonempty");
  std::vector<char> is_target(g.num_vertices(), 0);
  for (Vertex t : targets) {
    if (t >= g.num_vertices()) throw ArgumentError("target vertex out of range");
    is_target[t] = 1;
  }
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> d(g.num_vertices(), kUnseen);
  std::deque<Vertex> queue{v};
  d[v] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    if (is_target[u]) return d[u];
    for (Vertex w : g.neighbors(u)) {
      if (d[w] == kUnseen) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.num_vertices(), kNone);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (label[s] != kNone) continue;
    label[s] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (label[w] == kNone) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace potts
