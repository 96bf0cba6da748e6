#include <doctest.h>

#include <cmath>

#include "brute_force.hpp"
#include "corpus.hpp"
#include "potts/counting.hpp"
#include "potts/errors.hpp"
#include "potts/exact.hpp"
#include "potts/generators.hpp"

using namespace potts;

namespace {

PottsParams P(int q, const char* beta) { return PottsParams(q, Rational::parse_decimal(beta)); }

}  // namespace

TEST_SUITE("counting") {
  TEST_CASE("feasible configurations") {
    Pinning pins(4);
    pins.pin(2, 1);
    const Instance soft(gen::cycle(4), P(3, "0.5"), pins);
    const auto a = find_feasible_config(soft);
    CHECK(a == Coloring{0, 0, 1, 0});
    CHECK(weight(soft, a) > 0.0);

    const Instance c4(gen::cycle(4), P(3, "0"));
    CHECK(weight(c4, find_feasible_config(c4)) > 0.0);

    CHECK_THROWS_AS(find_feasible_config(Instance(gen::complete(4), P(3, "0"))), InfeasibleError);
  }

  TEST_CASE("greedy coloring on the corpus") {
    for (const auto& entry : testing::make_corpus(150, 61)) {
      const Instance& inst = entry.instance;
      INFO(entry.label);
      try {
        CHECK(weight(inst, find_feasible_config(inst)) > 0.0);
      } catch (const InfeasibleError&) {
        // Greedy block coloring may fail outside the sparse regime.
        CHECK(inst.params.is_coloring());
      }
    }
  }

  TEST_CASE("partition examples") {
    const auto edge = estimate_partition(Instance(gen::path(2), P(3, "0")), 10);
    CHECK(std::exp(edge.log_z) == doctest::Approx(6.0).epsilon(1e-9));
    const auto c4 = estimate_partition(Instance(gen::cycle(4), P(3, "0")), 8);
    CHECK(std::exp(c4.log_z) == doctest::Approx(18.0).epsilon(1e-9));
    CHECK_THROWS_AS(estimate_partition(Instance(gen::complete(4), P(3, "0")), 8), InfeasibleError);
  }

  TEST_CASE("telescoping with exact marginals reconstructs Z") {
    const auto oracle = [](const Instance& inst, Vertex v, Color x) {
      return exact::marginal(inst, v, x);
    };
    for (const auto& entry : testing::make_corpus(60, 67, 8)) {
      const Instance& inst = entry.instance;
      Coloring anchor;
      try {
        anchor = find_feasible_config(inst);
      } catch (const InfeasibleError&) {
        continue;
      }
      const double want = exact::log_partition(inst);
      for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{5}}) {
        const auto order = elimination_order(inst, seed);
        INFO(entry.label);
        CHECK(std::abs(telescoping_log_partition(inst, anchor, order, oracle) - want) < 1e-10);
      }
    }
  }

  TEST_CASE("full depth is order invariant and exact") {
    for (const auto& entry : testing::make_corpus(40, 71, 7)) {
      const Instance& inst = entry.instance;
      const int depth = static_cast<int>(inst.num_vertices());
      PartitionOptions shuffled;
      shuffled.order_seed = 3;
      try {
        const auto a = estimate_partition(inst, depth);
        const auto b = estimate_partition(inst, depth, shuffled);
        INFO(entry.label);
        CHECK(std::abs(a.log_z - b.log_z) < 1e-8);
        CHECK(std::abs(a.log_z - exact::log_partition(inst)) < 1e-8);
        for (const auto& f : a.per_vertex) {
          CHECK(f.marginal > 0.0);
          CHECK(f.marginal <= 1.0 + 1e-12);
        }
      } catch (const InfeasibleError&) {
        CHECK(inst.params.is_coloring());
      }
    }
  }

  TEST_CASE("gnp at q=14 self-consistency") {
    const Instance inst(gen::gnp(60, 3.0, 2), P(14, "0"));
    const int depth = 4;
    PartitionOptions other;
    other.order_seed = 11;
    const auto a = estimate_partition(inst, depth);
    const auto b = estimate_partition(inst, depth, other);
    CHECK(std::abs(a.log_z - b.log_z) < 0.05);
  }

  TEST_CASE("beta > 0 never errors") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Instance inst(gen::gnp(30, 2.0, seed), P(6, "0.2"));
      CHECK_NOTHROW(estimate_partition(inst, 1));
    }
  }

  TEST_CASE("depth for accuracy") {
    CHECK(depth_for_accuracy(100, 0.01, 1.0) == 10);
    CHECK_THROWS_AS(depth_for_accuracy(100, 0.0), ArgumentError);
  }
}
