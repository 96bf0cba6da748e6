#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "potts/model.hpp"

namespace potts::exact {

// Brute-force reference computations for small instances.
//
// Free vertices are enumerated by backtracking; at beta = 0 a branch is cut
// as soon as its weight drops to zero. The partition function factorizes
// over connected components of the free subgraph (pinned vertices are fixed
// boundary), so each component is enumerated on its own.

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// ln Z(Omega); -infinity for an infeasible instance.
double log_partition(const Instance& instance, std::uint64_t budget = kDefaultBudget);

// Z(Omega), with Neumaier-compensated summation inside each component.
double partition(const Instance& instance, std::uint64_t budget = kDefaultBudget);

// Pr[c(v) = x] for every x. Pinned v yields the indicator vector. Throws
// InfeasibleError if the instance is infeasible.
std::vector<double> marginals(const Instance& instance, Vertex v,
                              std::uint64_t budget = kDefaultBudget);

double marginal(const Instance& instance, Vertex v, Color x, std::uint64_t budget = kDefaultBudget);

// Pr[c(B) = pi] where `config[k]` is the color of `vertices[k]`.
double block_marginal(const Instance& instance, std::span<const Vertex> vertices,
                      std::span<const Color> config, std::uint64_t budget = kDefaultBudget);

bool is_feasible(const Instance& instance, std::uint64_t budget = kDefaultBudget);

struct GibbsTable {
  std::vector<Coloring> configurations;  // positive weight only, lexicographic
  std::vector<double> weights;
  double total = 0.0;

  double probability(std::size_t k) const { return weights[k] / total; }
};

// Every positive-weight configuration of the whole instance.
GibbsTable gibbs_table(const Instance& instance, std::uint64_t budget = kDefaultBudget);

}  // namespace potts::exact
