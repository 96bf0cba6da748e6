#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "potts/decay.hpp"
#include "potts/model.hpp"

namespace potts {

// A configuration of positive weight consistent with the pinning.
//
// beta > 0: free vertices get color 0. beta = 0: take the lowest free vertex
// v, color B(v) properly against everything already fixed, fix it, repeat.
// Throws InfeasibleError if a block admits no proper coloring.
Coloring find_feasible_config(const Instance& instance, const MargOptions& options = {});

struct VertexFactor {
  Vertex vertex = 0;
  Color color = 0;
  double marginal = 0.0;  // estimate of Pr[c(v_i) = sigma(v_i) | earlier pins]
};

struct PartitionEstimate {
  double log_z = 0.0;
  Coloring anchor;
  double anchor_log_weight = 0.0;
  std::vector<VertexFactor> per_vertex;
  int depth = 0;
  MargDiagnostics diagnostics;
};

// Conditional marginal oracle: (instance with earlier vertices pinned, vertex,
// color) -> probability. Used to plug exact marginals into the telescoping
// product.
using ConditionalMarginal = std::function<double(const Instance&, Vertex, Color)>;

// ln Z = ln w(sigma) - sum_i ln Pr[c(v_i) = sigma(v_i) | c(v_j) = sigma(v_j), j < i]
// over the free vertices in `order`, with the conditional marginals taken
// from `oracle`.
double telescoping_log_partition(const Instance& instance, std::span<const Color> anchor,
                                 std::span<const Vertex> order, const ConditionalMarginal& oracle);

struct PartitionOptions {
  MargOptions marg;
  // Vertex order: ascending ids, or a seeded random permutation.
  std::optional<std::uint64_t> order_seed;
};

// Telescoping estimate of ln Z with truncated marginals at the given depth.
// Throws InfeasibleError (naming the vertex) when an estimate is zero.
PartitionEstimate estimate_partition(const Instance& instance, int depth,
                                     const PartitionOptions& options = {});

// Free vertices in ascending order, or shuffled by `seed`.
std::vector<Vertex> elimination_order(const Instance& instance, std::optional<std::uint64_t> seed);

// Depth for a target accuracy: ceil(coeff * (ln n + ln(1/eps))). coeff is a
// heuristic constant (default 3).
int depth_for_accuracy(std::size_t n, double eps, double coeff = 3.0);

}  // namespace potts
