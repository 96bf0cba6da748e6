#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "potts/graph.hpp"
#include "potts/rational.hpp"

namespace potts {

// Colors are 0-based internally and 1-based in every file and CLI surface.
using Color = std::int32_t;
inline constexpr Color kNoColor = -1;

// q-state anti-ferromagnetic Potts parameters: q >= 2, 0 <= beta < 1.
//
// beta is held exactly so that the low/high degree split, which changes
// block shapes discontinuously, never depends on floating point rounding.
class PottsParams {
 public:
  PottsParams(int q, Rational beta);

  int q() const { return q_; }
  const Rational& beta_exact() const { return beta_; }
  double beta() const { return beta_value_; }
  bool is_coloring() const { return beta_.is_zero(); }

  // Largest degree d with d < (q-1)/(1-beta) - 2, or -1 if there is none.
  std::int64_t max_low_degree() const { return max_low_degree_; }
  // Largest degree d with d <= (q-1)/(1-beta) - 2, or -1 if there is none.
  std::int64_t max_contracting_degree() const { return max_contracting_degree_; }

  friend bool operator==(const PottsParams& a, const PottsParams& b) {
    return a.q_ == b.q_ && a.beta_ == b.beta_;
  }

 private:
  int q_;
  Rational beta_;
  double beta_value_;
  std::int64_t max_low_degree_;
  std::int64_t max_contracting_degree_;
};

// Throws ArgumentError when q < 3; the estimators are only defined there.
void require_algorithmic_range(const PottsParams& params);

bool is_low_degree(const PottsParams& params, std::size_t degree);

// delta(d) = 2(1-beta) / (q-1-(1-beta)d) if d <= (q-1)/(1-beta) - 2, else 1.
double delta(const PottsParams& params, std::size_t degree);

// 1 / (q - (1-beta)d). Requires q > (1-beta)d.
double marginal_upper_bound(const PottsParams& params, std::size_t degree);

// 1 / max{1, q - (1-beta)d}: the cap applied by the estimators.
double clamped_marginal_upper_bound(const PottsParams& params, std::size_t degree);

// beta^d / q.
double marginal_lower_bound(const PottsParams& params, std::size_t degree);

// Fixed colors of an instance, one slot per vertex.
class Pinning {
 public:
  Pinning() = default;
  explicit Pinning(std::size_t n) : colors_(n, kNoColor) {}

  std::size_t size() const { return colors_.size(); }
  bool is_pinned(Vertex v) const { return colors_[v] != kNoColor; }
  Color color(Vertex v) const { return colors_[v]; }
  void pin(Vertex v, Color c) { colors_[v] = c; }
  void unpin(Vertex v) { colors_[v] = kNoColor; }
  std::size_t count() const;
  std::span<const Color> colors() const { return colors_; }

  friend bool operator==(const Pinning&, const Pinning&) = default;

 private:
  std::vector<Color> colors_;
};

// Potts instance: graph, parameters and a boundary condition.
struct Instance {
  Graph graph;
  PottsParams params;
  Pinning pinning;

  Instance(Graph g, PottsParams p);
  Instance(Graph g, PottsParams p, Pinning pins);

  std::size_t num_vertices() const { return graph.num_vertices(); }
  std::size_t num_free() const { return graph.num_vertices() - pinning.count(); }
};

// Full configuration over V, one color per vertex.
using Coloring = std::vector<Color>;

std::size_t monochromatic_edges(const Graph& g, std::span<const Color> coloring);

// beta^{#mon} if the coloring agrees with the pinning, otherwise 0
// (0^0 = 1, so beta = 0 counts proper colorings).
double weight(const Instance& instance, std::span<const Color> coloring);

}  // namespace potts
