#include "potts/instance_view.hpp"

#include "potts/errors.hpp"

namespace potts {

InstanceView::InstanceView(const Instance& base)
    : graph_(&base.graph),
      params_(&base.params),
      active_(base.graph.num_edges(), 1),
      degree_(base.graph.num_vertices()),
      pins_(base.pinning.colors().begin(), base.pinning.colors().end()) {
  for (Vertex v = 0; v < degree_.size(); ++v) {
    degree_[v] = static_cast<std::uint32_t>(base.graph.degree(v));
  }
}

void InstanceView::remove_edge(EdgeId e) {
  if (!active_[e]) return;
  active_[e] = 0;
  const auto& edge = graph_->edge(e);
  --degree_[edge.u];
  --degree_[edge.v];
  undo_.push_back({Change::Kind::kEdge, e});
}

void InstanceView::pin(Vertex v, Color c) {
  if (pins_[v] != kNoColor) {
    if (pins_[v] != c) throw InvariantError("vertex pinned twice with different colors");
    return;
  }
  pins_[v] = c;
  undo_.push_back({Change::Kind::kPin, v});
}

void InstanceView::rollback(Checkpoint cp) {
  while (undo_.size() > cp) {
    const Change change = undo_.back();
    undo_.pop_back();
    if (change.kind == Change::Kind::kEdge) {
      active_[change.id] = 1;
      const auto& edge = graph_->edge(change.id);
      ++degree_[edge.u];
      ++degree_[edge.v];
    } else {
      pins_[change.id] = kNoColor;
    }
  }
}

Instance InstanceView::materialize() const {
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < active_.size(); ++e) {
    if (active_[e]) edges.push_back(graph_->edge(e));
  }
  Pinning pinning(num_vertices());
  for (Vertex v = 0; v < pins_.size(); ++v) {
    if (pins_[v] != kNoColor) pinning.pin(v, pins_[v]);
  }
  return Instance(Graph(num_vertices(), std::move(edges)), *params_, std::move(pinning));
}

}  // namespace potts
