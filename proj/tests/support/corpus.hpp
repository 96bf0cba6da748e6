#pragma once

// Random small instances: n <= 9, q in {3,4,5}, beta in {0, 0.25, 0.5, 0.9},
// random edges and pinnings. Infeasible beta = 0 draws are rejected.

#include <cstdint>
#include <string>
#include <vector>

#include "potts/model.hpp"

namespace potts::testing {

struct CorpusEntry {
  Instance instance;
  std::string label;
};

std::vector<CorpusEntry> make_corpus(std::size_t count, std::uint64_t seed,
                                     std::size_t max_n = 9);

std::string describe(const Instance& instance);

}  // namespace potts::testing
