#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "potts/graph.hpp"

namespace potts::gen {

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);

// Center 0 joined to leaves 1..k.
Graph star(std::size_t k);

// Spine 0..n-1 (a path), and spine vertex i carries the k pendant vertices
// n + i*k, ..., n + i*k + k - 1.
Graph caterpillar(std::size_t n, std::size_t k);

// Erdos-Renyi G(n, d/n). Pair (i, j), i < j, with lexicographic index t is
// present iff the t-th value of the counter stream keyed by `seed` falls
// below d/n, so the result does not depend on enumeration order.
Graph gnp(std::size_t n, double d, std::uint64_t seed);

}  // namespace potts::gen
