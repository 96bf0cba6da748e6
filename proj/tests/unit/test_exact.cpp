#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "brute_force.hpp"
#include "corpus.hpp"
#include "potts/errors.hpp"
#include "potts/exact.hpp"
#include "potts/generators.hpp"

using namespace potts;

namespace {

PottsParams P(int q, const char* beta) { return PottsParams(q, Rational::parse_decimal(beta)); }

Instance pinned(Graph g, PottsParams p, std::vector<std::pair<Vertex, Color>> pins) {
  Pinning pinning(g.num_vertices());
  for (auto [v, c] : pins) pinning.pin(v, c);
  return Instance(std::move(g), p, std::move(pinning));
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("partition examples") {
    CHECK(exact::partition(Instance(gen::path(2), P(3, "0"))) == doctest::Approx(6.0));
    CHECK(exact::partition(Instance(gen::path(2), P(2, "0.5"))) == doctest::Approx(3.0));
    CHECK(exact::partition(Instance(gen::cycle(4), P(3, "0"))) == doctest::Approx(18.0));
  }

  TEST_CASE("marginal examples") {
    const Instance path = pinned(gen::path(3), P(3, "0"), {{0, 0}});
    CHECK(exact::marginal(path, 2, 0) == doctest::Approx(0.5));
    CHECK(exact::marginal(path, 1, 0) == 0.0);
    const Instance tri(gen::complete(3), P(3, "0"));
    for (Vertex v = 0; v < 3; ++v) {
      for (Color x = 0; x < 3; ++x) CHECK(exact::marginal(tri, v, x) == doctest::Approx(1.0 / 3));
    }
  }

  TEST_CASE("block marginal examples") {
    const Instance star(gen::star(5), P(7, "0"));
    const Vertex block[] = {0, 1};
    const Color proper[] = {2, 5};
    const Color clash[] = {4, 4};
    CHECK(exact::block_marginal(star, block, proper) == doctest::Approx(1.0 / 42.0));
    CHECK(exact::block_marginal(star, block, clash) == 0.0);
    const Instance path = pinned(gen::path(3), P(3, "0"), {{0, 0}});
    const Vertex v2[] = {2};
    const Color x0[] = {0};
    CHECK(exact::block_marginal(path, v2, x0) == doctest::Approx(exact::marginal(path, 2, 0)));
  }

  TEST_CASE("feasibility examples") {
    CHECK(exact::is_feasible(Instance(gen::complete(6), P(3, "0.1"))));
    CHECK_FALSE(exact::is_feasible(Instance(gen::complete(4), P(3, "0"))));
    CHECK(exact::is_feasible(Instance(gen::complete(3), P(3, "0"))));
    CHECK_THROWS_AS(exact::marginals(Instance(gen::complete(4), P(3, "0")), 0), InfeasibleError);
    CHECK(exact::partition(Instance(gen::complete(4), P(3, "0"))) == 0.0);
  }

  TEST_CASE("agrees with naive enumeration on the corpus") {
    for (const auto& entry : testing::make_corpus(120, 5, 7)) {
      const Instance& inst = entry.instance;
      INFO(entry.label);
      const double z = testing::naive_partition(inst);
      CHECK(exact::partition(inst) == doctest::Approx(z).epsilon(1e-12));
      CHECK(exact::is_feasible(inst));
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        const auto got = exact::marginals(inst, v);
        const auto want = testing::naive_marginals(inst, v);
        double sum = 0.0;
        for (int x = 0; x < inst.params.q(); ++x) {
          CHECK(got[x] == doctest::Approx(want[x]).epsilon(1e-12));
          sum += got[x];
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("block marginals agree with naive enumeration") {
    std::mt19937_64 rng(8);
    for (const auto& entry : testing::make_corpus(60, 6, 7)) {
      const Instance& inst = entry.instance;
      std::vector<Vertex> block;
      for (Vertex v = 0; v < inst.num_vertices() && block.size() < 3; ++v) {
        if (!inst.pinning.is_pinned(v)) block.push_back(v);
      }
      std::vector<Color> pi(block.size());
      for (auto& c : pi) c = std::uniform_int_distribution<Color>(0, inst.params.q() - 1)(rng);
      INFO(entry.label);
      CHECK(exact::block_marginal(inst, block, pi) ==
            doctest::Approx(testing::naive_block_marginal(inst, block, pi)).epsilon(1e-12));
    }
  }

  TEST_CASE("relabeling invariance") {
    std::mt19937_64 rng(12);
    for (const auto& entry : testing::make_corpus(40, 7, 8)) {
      const Instance& inst = entry.instance;
      std::vector<Vertex> perm(inst.num_vertices());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Pinning pins(inst.num_vertices());
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        if (inst.pinning.is_pinned(v)) pins.pin(perm[v], inst.pinning.color(v));
      }
      const Instance other(inst.graph.relabeled(perm), inst.params, pins);
      CHECK(exact::log_partition(other) == doctest::Approx(exact::log_partition(inst)).epsilon(1e-12));
    }
  }

  TEST_CASE("gibbs table") {
    const Instance inst = pinned(gen::path(4), P(3, "0.5"), {{3, 1}});
    const auto table = exact::gibbs_table(inst);
    CHECK(table.configurations.size() == 27);
    double total = 0.0;
    for (std::size_t k = 0; k < table.weights.size(); ++k) {
      CHECK(table.weights[k] == doctest::Approx(testing::naive_weight(inst, table.configurations[k])));
      CHECK(table.configurations[k][3] == 1);
      total += table.probability(k);
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(table.total == doctest::Approx(exact::partition(inst)));
  }

  TEST_CASE("pinned vertices are indicators and q = 2 is accepted") {
    const Instance inst = pinned(gen::path(3), P(2, "0.3"), {{1, 1}});
    const auto m = exact::marginals(inst, 1);
    CHECK(m == std::vector<double>{0.0, 1.0});
    CHECK(exact::marginal(inst, 0, 1) == doctest::Approx(0.3 / 1.3));
  }

  TEST_CASE("budget") {
    CHECK_THROWS_AS(exact::partition(Instance(gen::path(14), P(5, "0.5")), 1000), BudgetError);
  }
}
