#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "potts/model.hpp"

namespace potts {

// Mutable overlay on an immutable Instance: edges can be switched off and
// vertices pinned, and every change can be undone back to a checkpoint.
//
// The recursive estimators walk a tree of sub-instances that differ from
// their parent by a handful of pins and edge removals. Applying the delta,
// recursing and rolling back avoids copying the graph at every node.
// Vertices are never deleted; a vertex with all edges removed is isolated,
// which leaves every other marginal untouched.
class InstanceView {
 public:
  explicit InstanceView(const Instance& base);

  const Graph& graph() const { return *graph_; }
  const PottsParams& params() const { return *params_; }
  std::size_t num_vertices() const { return graph_->num_vertices(); }

  bool edge_active(EdgeId e) const { return active_[e] != 0; }
  std::size_t degree(Vertex v) const { return degree_[v]; }
  bool is_pinned(Vertex v) const { return pins_[v] != kNoColor; }
  Color pinned_color(Vertex v) const { return pins_[v]; }
  bool is_low_degree(Vertex v) const {
    return static_cast<std::int64_t>(degree_[v]) <= params_->max_low_degree();
  }

  // Calls f(neighbor, edge_id) for every active edge at v, neighbors ascending.
  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    const auto nbrs = graph_->neighbors(v);
    const auto ids = graph_->incident_edges(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (active_[ids[k]]) f(nbrs[k], ids[k]);
    }
  }

  void remove_edge(EdgeId e);
  void pin(Vertex v, Color c);

  using Checkpoint = std::size_t;
  Checkpoint checkpoint() const { return undo_.size(); }
  void rollback(Checkpoint cp);

  // Standalone copy of the current state (inactive edges dropped).
  Instance materialize() const;

 private:
  struct Change {
    enum class Kind : std::uint8_t { kEdge, kPin } kind;
    std::uint32_t id;
  };

  const Graph* graph_;
  const PottsParams* params_;
  std::vector<std::uint8_t> active_;
  std::vector<std::uint32_t> degree_;
  std::vector<Color> pins_;
  std::vector<Change> undo_;
};

}  // namespace potts
