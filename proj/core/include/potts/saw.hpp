#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potts/graph.hpp"
#include "potts/model.hpp"

namespace potts {

// A self-avoiding walk (v, v_1, ..., v_l): distinct vertices, consecutive
// ones adjacent. Its length is the number of edges.
using SawWalk = std::vector<Vertex>;

// Degree-indexed weight, e.g. the Potts contraction function delta(d).
using DegreeWeight = std::function<double(std::size_t)>;

DegreeWeight potts_delta(const PottsParams& params);
DegreeWeight constant_weight(double value);

// Visits every self-avoiding walk of exactly `length` edges starting at v, in
// lexicographic order of vertex sequences.
void enumerate_saws(const Graph& g, Vertex v, std::size_t length,
                    const std::function<void(std::span<const Vertex>)>& visit);

std::vector<SawWalk> collect_saws(const Graph& g, Vertex v, std::size_t length);

std::uint64_t saw_count(const Graph& g, Vertex v, std::size_t length);

// E_delta(v, l): sum over SAW(v, l) of prod_{i=1..l} delta(deg v_i). The start
// vertex contributes no factor. Streaming DFS, memory O(l).
double e_delta(const Graph& g, Vertex v, std::size_t length, const DegreeWeight& delta);

struct ContractionReport {
  std::vector<std::size_t> lengths;   // 1..completed range
  std::vector<double> max_e_delta;    // max over v of E_delta(v, l)
  std::vector<Vertex> argmax;         // first v attaining the max
  double gamma = 0.0;                 // exp(slope) of the log-linear fit
  std::size_t fit_from = 0;           // fit uses lengths in [fit_from, fit_to]
  std::size_t fit_to = 0;
  bool contracting = false;           // gamma < 1
  bool budget_exhausted = false;
  std::uint64_t walk_extensions = 0;
  std::vector<std::string> warnings;
};

// Computes max_v E_delta(v, l) for l = 1..l_max and fits the decay rate
// gamma over l in [ceil(l_max/2), l_max], the upper half, which suppresses
// polynomial prefactors. When the DFS would exceed `extension_budget` walk
// extensions the range is cut at the last complete length and a warning is
// recorded.
ContractionReport verify_contraction(const Graph& g, std::size_t l_max, const DegreeWeight& delta,
                                     std::uint64_t extension_budget = 100'000'000);

// Explicit SAW tree, for inspection and tests only.
struct SawTreeNode {
  Vertex vertex = 0;                  // end vertex of the walk
  std::size_t depth = 0;              // walk length
  std::optional<std::size_t> parent;  // index into SawTree::nodes
  std::vector<std::size_t> children;
};

struct SawTree {
  std::vector<SawTreeNode> nodes;  // nodes[0] is the trivial walk (v)

  SawWalk walk(std::size_t node) const;
};

// Throws BudgetError if more than `node_cap` nodes would be created.
SawTree build_saw_tree(const Graph& g, Vertex v, std::size_t max_depth,
                       std::size_t node_cap = 1'000'000);

}  // namespace potts
