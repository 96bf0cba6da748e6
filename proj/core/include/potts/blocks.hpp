#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "potts/instance_view.hpp"
#include "potts/model.hpp"

namespace potts {

// A permissive block B: a set of free vertices whose free outer boundary
// consists of low-degree vertices only.
struct Block {
  std::vector<Vertex> vertices;        // sorted
  std::vector<Vertex> inner_boundary;  // u in B with a neighbor outside B, sorted
  std::vector<Edge> boundary_edges;    // (u_i, v_i), u_i in B, v_i not in B, sorted
  std::vector<Edge> internal_edges;    // E(B), canonical (u < v), sorted
  std::vector<EdgeId> internal_edge_ids;
  std::vector<EdgeId> boundary_edge_ids;

  std::size_t size() const { return vertices.size(); }
  bool contains(Vertex v) const;
  // Position of v in `vertices`; v must be a member.
  std::size_t index_of(Vertex v) const;
};

// Minimal permissive block containing `seeds`: repeatedly absorb the lowest
// numbered free high-degree vertex on the outer boundary until none is left.
// Seeds must be free. The fixed point does not depend on the order.
Block minimal_permissive_block(const InstanceView& view, std::span<const Vertex> seeds);
Block minimal_permissive_block(const Instance& instance, std::span<const Vertex> seeds);

// Feasible block configurations, row-major: row r holds the colors of
// block.vertices in order.
struct BlockConfigs {
  std::size_t width = 0;
  std::vector<Color> colors;

  std::size_t size() const { return width == 0 ? 0 : colors.size() / width; }
  bool empty() const { return size() == 0; }
  std::span<const Color> operator[](std::size_t r) const {
    return {colors.data() + r * width, width};
  }
};

// beta > 0: all q^|B| configurations. beta = 0: every configuration that is
// proper on G[B] and avoids the colors of pinned neighbors, which for a
// permissive block of a feasible instance are exactly the feasible ones.
// Rows are in lexicographic order. Throws BudgetError past `max_configs`.
BlockConfigs feasible_block_configs(const InstanceView& view, const Block& block,
                                    std::size_t max_configs = 1'000'000);
BlockConfigs feasible_block_configs(const Instance& instance, const Block& block,
                                    std::size_t max_configs = 1'000'000);

// w_{G[B]}(pi) = beta^{#monochromatic internal edges}.
double block_weight(const PottsParams& params, const Block& block, std::span<const Color> config);

enum class SparseMode { kExhaustive, kSampled };

struct SparseOptions {
  SparseMode mode = SparseMode::kExhaustive;
  std::size_t trials = 10'000;          // sampled mode
  std::uint64_t seed = 0;               // sampled mode
  std::size_t path_budget = 2'000'000;  // exhaustive mode
};

struct SparseReport {
  std::size_t l_max = 0;
  double worst_ratio = 0.0;  // max |B(P)| / (l + ln n)
  std::vector<Vertex> worst_path;
  std::size_t worst_block_size = 0;
  std::size_t paths_tested = 0;
  SparseMode mode = SparseMode::kExhaustive;
};

// Empirical lower bound on the locally-sparse constant: the largest
// |B(P)| / (l + ln n) over simple paths P with 1 <= l <= l_max edges, blocks
// taken on the unpinned instance. Exhaustive mode throws BudgetError when
// more than path_budget paths exist.
SparseReport verify_locally_sparse(const Graph& g, const PottsParams& params, std::size_t l_max,
                                   const SparseOptions& options = {});

std::string to_string(SparseMode mode);

}  // namespace potts
