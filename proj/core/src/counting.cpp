#include "potts/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <numeric>
#include <random>
#include <string>

#include "potts/errors.hpp"

namespace potts {

namespace {

// Lexicographically smallest coloring of the block that is proper on G[B]
// and avoids the colors of pinned neighbors. At most `budget` search nodes.
std::optional<std::vector<Color>> first_proper_block_coloring(const InstanceView& view,
                                                              const Block& block,
                                                              std::size_t budget) {
  const int q = view.params().q();
  const std::size_t width = block.size();
  std::vector<std::vector<std::size_t>> earlier(width);
  std::vector<std::vector<Color>> forbidden(width);
  for (std::size_t k = 0; k < width; ++k) {
    view.for_each_neighbor(block.vertices[k], [&](Vertex w, EdgeId) {
      if (view.is_pinned(w)) {
        forbidden[k].push_back(view.pinned_color(w));
      } else if (block.contains(w) && block.index_of(w) < k) {
        earlier[k].push_back(block.index_of(w));
      }
    });
  }
  std::vector<Color> colors(width, kNoColor);
  std::size_t nodes = 0;
  std::size_t k = 0;
  while (true) {
    if (k == width) return colors;
    Color c = colors[k] + 1;
    for (; c < q; ++c) {
      if (++nodes > budget) return std::nullopt;
      const bool clash =
          std::find(forbidden[k].begin(), forbidden[k].end(), c) != forbidden[k].end() ||
          std::any_of(earlier[k].begin(), earlier[k].end(),
                      [&](std::size_t j) { return colors[j] == c; });
      if (!clash) break;
    }
    if (c < q) {
      colors[k] = c;
      ++k;
      continue;
    }
    colors[k] = kNoColor;
    if (k == 0) return std::nullopt;
    --k;
  }
}

double log_weight(const Instance& instance, std::span<const Color> coloring) {
  const std::size_t mono = monochromatic_edges(instance.graph, coloring);
  if (mono == 0) return 0.0;
  if (instance.params.is_coloring()) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(mono) * std::log(instance.params.beta());
}

void check_anchor(const Instance& instance, std::span<const Color> anchor) {
  if (anchor.size() != instance.num_vertices()) throw ArgumentError("anchor size mismatch");
  for (Vertex v = 0; v < anchor.size(); ++v) {
    if (anchor[v] < 0 || anchor[v] >= instance.params.q()) {
      throw ArgumentError("anchor color out of range");
    }
    if (instance.pinning.is_pinned(v) && instance.pinning.color(v) != anchor[v]) {
      throw ArgumentError("anchor disagrees with the pinning");
    }
  }
  if (weight(instance, anchor) <= 0.0) throw InfeasibleError("anchor configuration has weight zero");
}

}  // namespace

Coloring find_feasible_config(const Instance& instance, const MargOptions& options) {
  const std::size_t n = instance.num_vertices();
  if (!instance.params.is_coloring()) {
    Coloring out(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (instance.pinning.is_pinned(v)) out[v] = instance.pinning.color(v);
    }
    return out;
  }
  for (const auto& e : instance.graph.edges()) {
    if (instance.pinning.is_pinned(e.u) && instance.pinning.is_pinned(e.v) &&
        instance.pinning.color(e.u) == instance.pinning.color(e.v)) {
      throw InfeasibleError("pinned neighbors " + std::to_string(e.u) + " and " +
                            std::to_string(e.v) + " share a color");
    }
  }

  InstanceView view(instance);
  for (Vertex v = 0; v < n; ++v) {
    if (view.is_pinned(v)) continue;
    const Vertex seed[] = {v};
    const Block block = minimal_permissive_block(view, seed);
    const auto colors = first_proper_block_coloring(view, block, options.max_block_configs);
    if (!colors) {
      throw InfeasibleError("no proper coloring of the block of vertex " + std::to_string(v) +
                            " found");
    }
    for (std::size_t k = 0; k < block.size(); ++k) view.pin(block.vertices[k], (*colors)[k]);
  }
  Coloring out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = view.pinned_color(v);
  return out;
}

double telescoping_log_partition(const Instance& instance, std::span<const Color> anchor,
                                 std::span<const Vertex> order, const ConditionalMarginal& oracle) {
  check_anchor(instance, anchor);
  Instance work = instance;
  double log_z = log_weight(instance, anchor);
  for (Vertex v : order) {
    if (v >= work.num_vertices() || work.pinning.is_pinned(v)) {
      throw ArgumentError("elimination order must list distinct free vertices");
    }
    const double p = oracle(work, v, anchor[v]);
    if (!(p > 0.0)) {
      throw InfeasibleError("conditional marginal of vertex " + std::to_string(v) + " is zero");
    }
    log_z -= std::log(p);
    work.pinning.pin(v, anchor[v]);
  }
  if (work.num_free() != 0) throw ArgumentError("elimination order must cover every free vertex");
  return log_z;
}

PartitionEstimate estimate_partition(const Instance& instance, int depth,
                                     const PartitionOptions& options) {
  require_algorithmic_range(instance.params);
  PartitionEstimate out;
  out.depth = depth;
  out.anchor = find_feasible_config(instance, options.marg);
  out.anchor_log_weight = log_weight(instance, out.anchor);
  out.log_z = out.anchor_log_weight;

  Instance work = instance;
  for (Vertex v : elimination_order(instance, options.order_seed)) {
    InstanceView view(work);
    MarginalEstimator estimator(view, options.marg);
    const Color x = out.anchor[v];
    const double p = estimator.estimate(v, depth)[x];
    out.diagnostics.merge(estimator.diagnostics());
    if (!(p > 0.0)) {
      throw InfeasibleError("estimated conditional marginal of vertex " + std::to_string(v) +
                            " is zero at depth " + std::to_string(depth));
    }
    out.per_vertex.push_back({v, x, p});
    out.log_z -= std::log(p);
    work.pinning.pin(v, x);
  }
  return out;
}

std::vector<Vertex> elimination_order(const Instance& instance, std::optional<std::uint64_t> seed) {
  std::vector<Vertex> order;
  for (Vertex v = 0; v < instance.num_vertices(); ++v) {
    if (!instance.pinning.is_pinned(v)) order.push_back(v);
  }
  if (seed) {
    std::mt19937_64 gen(*seed);
    std::shuffle(order.begin(), order.end(), gen);
  }
  return order;
}

int depth_for_accuracy(std::size_t n, double eps, double coeff) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  if (!(coeff > 0.0)) throw ArgumentError("depth coefficient must be positive");
  const double ln_n = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
  return std::max(1, static_cast<int>(std::ceil(coeff * (ln_n + std::log(1.0 / eps)))));
}

}  // namespace potts
