#include "potts/generators.hpp"

#include <string>
#include <vector>

#include "potts/errors.hpp"
#include "potts/rng.hpp"

namespace potts::gen {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

}  // namespace

Graph path(std::size_t n) {
  require(n >= 1, "path: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph(n, std::move(edges));
}

Graph cycle(std::size_t n) {
  require(n >= 3, "cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Graph(n, std::move(edges));
}

Graph complete(std::size_t n) {
  require(n >= 1, "complete: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  return Graph(n, std::move(edges));
}

Graph star(std::size_t k) {
  require(k >= 1, "star: k must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t leaf = 1; leaf <= k; ++leaf) edges.push_back({0, static_cast<Vertex>(leaf)});
  return Graph(k + 1, std::move(edges));
}

Graph caterpillar(std::size_t n, std::size_t k) {
  require(n >= 1, "caterpillar: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n + i * k + j)});
    }
  }
  return Graph(n * (k + 1), std::move(edges));
}

Graph gnp(std::size_t n, double d, std::uint64_t seed) {
  require(n >= 1, "gnp: n must be >= 1");
  require(d > 0.0 && d < static_cast<double>(n), "gnp: need 0 < d < n");
  const double p = d / static_cast<double>(n);
  std::vector<Edge> edges;
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++index) {
      if (to_unit_interval(counter_hash(seed, index)) < p) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
      }
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace potts::gen
