#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "potts/blocks.hpp"
#include "potts/model.hpp"
#include "potts/saw.hpp"

namespace potts {

// E[delta(X)] for X ~ Bin(n, Delta/n), by exact summation with binomial
// terms in log space. Requires 0 < Delta <= n.
double expected_contraction(std::size_t n, double Delta, const PottsParams& params);

struct ProportionEstimate {
  double estimate = 0.0;
  double lower = 0.0;  // 95% Wilson interval
  double upper = 0.0;
};

ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct GrowthProcessReport {
  std::size_t initial_active = 0;  // L
  std::size_t n = 0;
  double d = 0.0;
  int q = 0;
  std::vector<std::size_t> t_values;          // 1..t_max
  std::vector<ProportionEstimate> tail;       // Pr[Y_t >= 0]
  std::vector<ProportionEstimate> survival;   // Pr[Z > t], Z = first t with Y_t = 0
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Least-squares slope of ln Pr[Y_t >= 0] over t > L where the estimate is
  // positive; nullopt with fewer than two such points.
  std::optional<double> log_tail_slope;
};

// Monte Carlo of the block-growth walk: Y_0 = L, Y_i = Y_{i-1} + X_i - 1 with
// X_i ~ Bin(n, d/n) for i <= L and, for i > L, X_i = X if X >= (q-5)/2 else 0.
// Trial k draws from a generator seeded with counter_hash(seed, k).
GrowthProcessReport simulate_block_growth(std::size_t L, std::size_t n, double d, int q,
                                          std::size_t t_max, std::size_t trials,
                                          std::uint64_t seed);

struct GnpReport {
  std::size_t n = 0;
  double d = 0.0;
  int q = 0;
  Rational beta;
  std::uint64_t seed = 0;
  std::size_t num_edges = 0;
  std::size_t max_degree = 0;
  ContractionReport contraction;
  SparseReport sparse;
  std::optional<bool> colorable;  // beta = 0 only: a proper coloring was found
  bool passed = false;
  std::vector<std::string> notes;
};

// G ~ G(n, d/n) with the given seed, then: contraction of delta up to l_max,
// sampled locally-sparse check, and (beta = 0) a greedy block coloring as a
// q-colorability witness.
GnpReport verify_gnp_properties(std::size_t n, double d, const PottsParams& params,
                                std::uint64_t seed, std::size_t l_max,
                                std::size_t sparse_trials = 2000);

}  // namespace potts
