#include "potts/saw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "potts/errors.hpp"

namespace potts {

DegreeWeight potts_delta(const PottsParams& params) {
  return [params](std::size_t d) { return delta(params, d); };
}

DegreeWeight constant_weight(double value) {
  return [value](std::size_t) { return value; };
}

namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.num_vertices()) throw ArgumentError("vertex out of range");
}

// Depth-first walker shared by the enumerators. `on_path` marks vertices of
// the current walk.
class SawWalker {
 public:
  explicit SawWalker(const Graph& g) : g_(g), on_path_(g.num_vertices(), 0) {}

  template <class Leaf>
  void walk(Vertex v, std::size_t length, Leaf&& leaf) {
    path_.assign(1, v);
    on_path_[v] = 1;
    extend(length, leaf);
    on_path_[v] = 0;
  }

 private:
  template <class Leaf>
  void extend(std::size_t remaining, Leaf& leaf) {
    if (remaining == 0) {
      leaf(std::span<const Vertex>(path_));
      return;
    }
    for (Vertex w : g_.neighbors(path_.back())) {
      if (on_path_[w]) continue;
      on_path_[w] = 1;
      path_.push_back(w);
      extend(remaining - 1, leaf);
      path_.pop_back();
      on_path_[w] = 0;
    }
  }

  const Graph& g_;
  std::vector<char> on_path_;
  std::vector<Vertex> path_;
};

// Sum over SAW(v, length) of the product of per-vertex weights, with a
// running count of walk extensions. Returns false when the budget runs out.
class WeightedSawSum {
 public:
  WeightedSawSum(const Graph& g, std::vector<double> vertex_weight)
      : g_(g), weight_(std::move(vertex_weight)), on_path_(g.num_vertices(), 0) {}

  bool sum(Vertex v, std::size_t length, std::uint64_t budget, double& out) {
    budget_ = budget;
    on_path_[v] = 1;
    const bool ok = extend(v, length, 1.0, out);
    on_path_[v] = 0;
    return ok;
  }

  std::uint64_t extensions() const { return extensions_; }

 private:
  bool extend(Vertex u, std::size_t remaining, double product, double& out) {
    if (remaining == 0) {
      out += product;
      return true;
    }
    for (Vertex w : g_.neighbors(u)) {
      if (on_path_[w]) continue;
      if (++extensions_ > budget_) return false;
      on_path_[w] = 1;
      const bool ok = extend(w, remaining - 1, product * weight_[w], out);
      on_path_[w] = 0;
      if (!ok) return false;
    }
    return true;
  }

  const Graph& g_;
  std::vector<double> weight_;
  std::vector<char> on_path_;
  std::uint64_t extensions_ = 0;
  std::uint64_t budget_ = 0;
};

std::vector<double> vertex_weights(const Graph& g, const DegreeWeight& delta) {
  std::vector<double> w(g.num_vertices());
  for (Vertex u = 0; u < g.num_vertices(); ++u) w[u] = delta(g.degree(u));
  return w;
}

}  // namespace

void enumerate_saws(const Graph& g, Vertex v, std::size_t length,
                    const std::function<void(std::span<const Vertex>)>& visit) {
  check_vertex(g, v);
  SawWalker walker(g);
  walker.walk(v, length, visit);
}

std::vector<SawWalk> collect_saws(const Graph& g, Vertex v, std::size_t length) {
  std::vector<SawWalk> out;
  enumerate_saws(g, v, length,
                 [&](std::span<const Vertex> w) { out.emplace_back(w.begin(), w.end()); });
  return out;
}

std::uint64_t saw_count(const Graph& g, Vertex v, std::size_t length) {
  check_vertex(g, v);
  std::uint64_t count = 0;
  SawWalker walker(g);
  walker.walk(v, length, [&](std::span<const Vertex>) { ++count; });
  return count;
}

double e_delta(const Graph& g, Vertex v, std::size_t length, const DegreeWeight& delta) {
  check_vertex(g, v);
  if (length == 0) throw ArgumentError("e_delta: length must be >= 1");
  WeightedSawSum summer(g, vertex_weights(g, delta));
  double total = 0.0;
  summer.sum(v, length, UINT64_MAX, total);
  return total;
}

ContractionReport verify_contraction(const Graph& g, std::size_t l_max, const DegreeWeight& delta,
                                     std::uint64_t extension_budget) {
  if (l_max < 2) throw ArgumentError("verify_contraction: l_max must be >= 2");
  ContractionReport report;
  WeightedSawSum summer(g, vertex_weights(g, delta));

  for (std::size_t l = 1; l <= l_max && !report.budget_exhausted; ++l) {
    double best = 0.0;
    Vertex best_v = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      double total = 0.0;
      const auto used = summer.extensions();
      if (!summer.sum(v, l, extension_budget - std::min(extension_budget, used), total)) {
        report.budget_exhausted = true;
        break;
      }
      if (total > best) {
        best = total;
        best_v = v;
      }
    }
    if (report.budget_exhausted) {
      report.warnings.push_back("walk extension budget of " + std::to_string(extension_budget) +
                                " exhausted at l=" + std::to_string(l) +
                                "; range cut to l<=" + std::to_string(l - 1));
      break;
    }
    report.lengths.push_back(l);
    report.max_e_delta.push_back(best);
    report.argmax.push_back(best_v);
  }
  report.walk_extensions = summer.extensions();

  const std::size_t completed = report.lengths.size();
  if (completed == 0) return report;
  report.fit_to = completed;
  report.fit_from = std::max<std::size_t>(1, (completed + 1) / 2);
  if (report.fit_to == report.fit_from && report.fit_from > 1) --report.fit_from;

  // Least squares of ln(max E) against l over the fit window. A zero value
  // means no walk of that length exists, so the sums vanish from there on.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  bool vanished = false;
  for (std::size_t l = report.fit_from; l <= report.fit_to; ++l) {
    const double y = report.max_e_delta[l - 1];
    if (y <= 0.0) {
      vanished = true;
      break;
    }
    const double x = static_cast<double>(l);
    sx += x;
    sy += std::log(y);
    sxx += x * x;
    sxy += x * std::log(y);
    ++count;
  }
  if (vanished) {
    report.gamma = 0.0;
  } else if (count >= 2) {
    const double c = static_cast<double>(count);
    const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
    report.gamma = std::exp(slope);
  } else {
    report.gamma = report.max_e_delta.back();
    report.warnings.push_back("fit window holds a single length; gamma is E_delta(l=1)");
  }
  report.contracting = report.gamma < 1.0;
  return report;
}

SawWalk SawTree::walk(std::size_t node) const {
  SawWalk out;
  std::optional<std::size_t> cur = node;
  while (cur) {
    out.push_back(nodes[*cur].vertex);
    cur = nodes[*cur].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SawTree build_saw_tree(const Graph& g, Vertex v, std::size_t max_depth, std::size_t node_cap) {
  check_vertex(g, v);
  SawTree tree;
  tree.nodes.push_back({v, 0, std::nullopt, {}});
  std::vector<char> on_path(g.num_vertices(), 0);

  // Iterative DFS so that node indices follow lexicographic walk order.
  struct Frame {
    std::size_t node;
    std::size_t next_neighbor;
  };
  std::vector<Frame> stack{{0, 0}};
  on_path[v] = 1;
  while (!stack.empty()) {
    auto& frame = stack.back();
    const auto& node = tree.nodes[frame.node];
    const auto nbrs = g.neighbors(node.vertex);
    if (node.depth == max_depth || frame.next_neighbor == nbrs.size()) {
      on_path[node.vertex] = 0;
      stack.pop_back();
      continue;
    }
    const Vertex w = nbrs[frame.next_neighbor++];
    if (on_path[w]) continue;
    if (tree.nodes.size() >= node_cap) {
      throw BudgetError("SAW tree exceeds the node cap of " + std::to_string(node_cap));
    }
    const std::size_t child = tree.nodes.size();
    const std::size_t parent = frame.node;
    tree.nodes.push_back({w, tree.nodes[parent].depth + 1, parent, {}});
    tree.nodes[parent].children.push_back(child);
    on_path[w] = 1;
    stack.push_back({child, 0});
  }
  return tree;
}

}  // namespace potts
