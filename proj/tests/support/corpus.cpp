#include "corpus.hpp"

#include <random>
#include <sstream>

#include "brute_force.hpp"

namespace potts::testing {

namespace {

const char* const kBetas[] = {"0", "0.25", "0.5", "0.9"};

}  // namespace

std::vector<CorpusEntry> make_corpus(std::size_t count, std::uint64_t seed, std::size_t max_n) {
  std::mt19937_64 gen(seed);
  std::vector<CorpusEntry> out;
  while (out.size() < count) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_n)(gen);
    const int q = std::uniform_int_distribution<int>(3, 5)(gen);
    const char* beta = kBetas[std::uniform_int_distribution<int>(0, 3)(gen)];
    const double p = std::uniform_real_distribution<double>(0.15, 0.6)(gen);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (std::bernoulli_distribution(p)(gen)) edges.push_back({u, v});
      }
    }
    Pinning pins(n);
    for (Vertex v = 0; v < n; ++v) {
      if (std::bernoulli_distribution(0.2)(gen)) {
        pins.pin(v, std::uniform_int_distribution<Color>(0, q - 1)(gen));
      }
    }
    if (pins.count() == n) continue;
    Instance inst(Graph(n, std::move(edges)), PottsParams(q, Rational::parse_decimal(beta)),
                  std::move(pins));
    if (naive_partition(inst) <= 0.0) continue;
    out.push_back({inst, describe(inst)});
  }
  return out;
}

std::string describe(const Instance& instance) {
  std::ostringstream os;
  os << "q=" << instance.params.q() << " beta=" << instance.params.beta_exact().to_string()
     << " n=" << instance.num_vertices() << " edges=[";
  for (const auto& e : instance.graph.edges()) os << ' ' << e.u << '-' << e.v;
  os << " ] pins=[";
  for (Vertex v = 0; v < instance.num_vertices(); ++v) {
    if (instance.pinning.is_pinned(v)) os << ' ' << v << ':' << instance.pinning.color(v) + 1;
  }
  os << " ]";
  return os.str();
}

}  // namespace potts::testing
