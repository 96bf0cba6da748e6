#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "potts/counting.hpp"
#include "potts/decay.hpp"
#include "potts/model.hpp"

namespace potts {

// Sequential conditional sampler: free vertices are visited in ascending
// order, each drawn from its (normalized) estimated conditional marginal
// given the colors drawn so far, then pinned.

struct Sample {
  Coloring coloring;
  double log_proposal = 0.0;  // ln of the probability the sampler assigned to it
  MargDiagnostics diagnostics;
};

struct SampleBatch {
  std::vector<Coloring> configurations;
  std::vector<double> log_proposal;
  std::uint64_t seed = 0;
  int depth = 0;
  MargDiagnostics diagnostics;
};

// Per-vertex conditional distribution provider: (instance with earlier
// vertices pinned, vertex) -> distribution over colors (need not be
// normalized).
using ConditionalDistribution = std::function<std::vector<double>(const Instance&, Vertex)>;

Sample sample_config(const Instance& instance, int depth, std::uint64_t seed,
                     const MargOptions& options = {});

// Same procedure with an arbitrary conditional distribution, e.g. exact
// marginals, which turns it into a perfect Gibbs sampler.
Sample sample_config_with(const Instance& instance, std::uint64_t seed,
                          const ConditionalDistribution& conditional);

// Sample k uses seed counter_hash(seed, k); `threads` workers split the batch.
SampleBatch sample_batch(const Instance& instance, int depth, std::uint64_t seed,
                         std::size_t count, const MargOptions& options = {},
                         std::size_t threads = 1);

// 1/2 sum_sigma |empirical(sigma) - gibbs(sigma)| against the exact Gibbs
// table of `instance`.
double empirical_tv(const std::vector<Coloring>& samples, const Instance& instance,
                    std::uint64_t budget = 100'000'000);

}  // namespace potts
