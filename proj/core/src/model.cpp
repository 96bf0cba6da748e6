#include "potts/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "potts/errors.hpp"

namespace potts {

namespace {

// Threshold (q-1)/(1-beta) - 2 in exact arithmetic: with beta = num/den,
// (1-beta) = a/den where a = den - num, and (q-1)/(1-beta) = b/a with
// b = (q-1) den.
__extension__ using Wide = __int128;

struct Threshold {
  Wide a;
  Wide b;
};

Threshold threshold_of(int q, const Rational& beta) {
  return {static_cast<Wide>(beta.den() - beta.num()), static_cast<Wide>(q - 1) * beta.den()};
}

}  // namespace

PottsParams::PottsParams(int q, Rational beta) : q_(q), beta_(beta), beta_value_(beta.value()) {
  if (q < 2) throw ArgumentError("q must be >= 2, got " + std::to_string(q));
  if (beta.num() >= beta.den()) {
    throw ArgumentError("beta must satisfy 0 <= beta < 1, got " + beta.to_string());
  }
  const auto [a, b] = threshold_of(q, beta);
  // d < b/a - 2  <=>  (d + 2) a < b  <=>  d + 2 <= ceil(b/a) - 1.
  max_low_degree_ = static_cast<std::int64_t>((b + a - 1) / a) - 3;
  // d <= b/a - 2  <=>  (d + 2) a <= b  <=>  d + 2 <= floor(b/a).
  max_contracting_degree_ = static_cast<std::int64_t>(b / a) - 2;
  max_low_degree_ = std::max<std::int64_t>(max_low_degree_, -1);
  max_contracting_degree_ = std::max<std::int64_t>(max_contracting_degree_, -1);
}

void require_algorithmic_range(const PottsParams& params) {
  if (params.q() < 3) {
    throw ArgumentError("the correlation-decay estimators require q >= 3 (q=" +
                        std::to_string(params.q()) + " is supported by the exact oracle only)");
  }
}

bool is_low_degree(const PottsParams& params, std::size_t degree) {
  return static_cast<std::int64_t>(degree) <= params.max_low_degree();
}

double delta(const PottsParams& params, std::size_t degree) {
  if (static_cast<std::int64_t>(degree) > params.max_contracting_degree()) return 1.0;
  const double lambda = 1.0 - params.beta();
  return 2.0 * lambda / (params.q() - 1 - lambda * static_cast<double>(degree));
}

double marginal_upper_bound(const PottsParams& params, std::size_t degree) {
  return 1.0 / (params.q() - (1.0 - params.beta()) * static_cast<double>(degree));
}

double clamped_marginal_upper_bound(const PottsParams& params, std::size_t degree) {
  return 1.0 / std::max(1.0, params.q() - (1.0 - params.beta()) * static_cast<double>(degree));
}

double marginal_lower_bound(const PottsParams& params, std::size_t degree) {
  return std::pow(params.beta(), static_cast<double>(degree)) / params.q();
}

std::size_t Pinning::count() const {
  return static_cast<std::size_t>(
      std::count_if(colors_.begin(), colors_.end(), [](Color c) { return c != kNoColor; }));
}

Instance::Instance(Graph g, PottsParams p)
    : graph(std::move(g)), params(p), pinning(graph.num_vertices()) {}

Instance::Instance(Graph g, PottsParams p, Pinning pins)
    : graph(std::move(g)), params(p), pinning(std::move(pins)) {
  if (pinning.size() != graph.num_vertices()) {
    throw ArgumentError("pinning size does not match the vertex count");
  }
  for (Vertex v = 0; v < pinning.size(); ++v) {
    if (pinning.is_pinned(v) && (pinning.color(v) < 0 || pinning.color(v) >= params.q())) {
      throw ArgumentError("pinned color of vertex " + std::to_string(v) + " is outside 1.." +
                          std::to_string(params.q()));
    }
  }
}

std::size_t monochromatic_edges(const Graph& g, std::span<const Color> coloring) {
  std::size_t count = 0;
  for (const auto& e : g.edges()) {
    if (coloring[e.u] == coloring[e.v]) ++count;
  }
  return count;
}

double weight(const Instance& instance, std::span<const Color> coloring) {
  if (coloring.size() != instance.num_vertices()) {
    throw ArgumentError("configuration must assign every vertex");
  }
  for (Vertex v = 0; v < coloring.size(); ++v) {
    if (instance.pinning.is_pinned(v) && instance.pinning.color(v) != coloring[v]) return 0.0;
  }
  const auto mono = monochromatic_edges(instance.graph, coloring);
  if (mono == 0) return 1.0;
  return std::pow(instance.params.beta(), static_cast<double>(mono));
}

}  // namespace potts
