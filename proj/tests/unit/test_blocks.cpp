#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "brute_force.hpp"
#include "corpus.hpp"
#include "potts/blocks.hpp"
#include "potts/errors.hpp"
#include "potts/generators.hpp"

using namespace potts;

namespace {

PottsParams P(int q, const char* beta) { return PottsParams(q, Rational::parse_decimal(beta)); }

std::vector<Vertex> block_of(const Instance& inst, std::vector<Vertex> seeds) {
  return minimal_permissive_block(inst, seeds).vertices;
}

// Closure by the definition, absorbing every violating vertex at once.
std::vector<Vertex> naive_closure(const Instance& inst, std::vector<Vertex> seeds) {
  std::vector<char> in(inst.num_vertices(), 0);
  for (Vertex s : seeds) in[s] = 1;
  while (true) {
    std::vector<Vertex> add;
    for (Vertex u = 0; u < inst.num_vertices(); ++u) {
      if (!in[u]) continue;
      for (Vertex w : inst.graph.neighbors(u)) {
        if (!in[w] && !inst.pinning.is_pinned(w) &&
            !is_low_degree(inst.params, inst.graph.degree(w))) {
          add.push_back(w);
        }
      }
    }
    if (add.empty()) break;
    for (Vertex w : add) in[w] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("blocks") {
  TEST_CASE("closure examples") {
    const Instance star(gen::star(5), P(7, "0"));
    CHECK(block_of(star, {0}) == std::vector<Vertex>{0});
    CHECK(block_of(star, {1}) == std::vector<Vertex>{0, 1});
    const Instance path(gen::path(3), P(7, "0"));
    CHECK(block_of(path, {1}) == std::vector<Vertex>{1});
  }

  TEST_CASE("complete graph saturates") {
    const Instance k8(gen::complete(8), P(3, "0"));
    CHECK(block_of(k8, {0, 1}).size() == 8);
  }

  TEST_CASE("closure matches the definition on the corpus") {
    for (const auto& entry : testing::make_corpus(150, 17)) {
      const Instance& inst = entry.instance;
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        if (inst.pinning.is_pinned(v)) continue;
        const Vertex seed[] = {v};
        const Block b = minimal_permissive_block(inst, seed);
        INFO(entry.label);
        CHECK(b.vertices == naive_closure(inst, {v}));
        CHECK(std::is_sorted(b.boundary_edges.begin(), b.boundary_edges.end()));
        for (Vertex u : b.vertices) CHECK_FALSE(inst.pinning.is_pinned(u));
        for (const auto& e : b.boundary_edges) {
          CHECK(b.contains(e.u));
          CHECK_FALSE(b.contains(e.v));
          if (!inst.pinning.is_pinned(e.v)) {
            CHECK(is_low_degree(inst.params, inst.graph.degree(e.v)));
          }
        }
        std::size_t internal = 0;
        for (const auto& e : inst.graph.edges()) internal += b.contains(e.u) && b.contains(e.v);
        CHECK(b.internal_edges.size() == internal);
      }
    }
  }

  TEST_CASE("seeds must be free") {
    Pinning pins(3);
    pins.pin(1, 0);
    const Instance inst(gen::path(3), P(3, "0.5"), pins);
    const Vertex seed[] = {1};
    CHECK_THROWS_AS(minimal_permissive_block(inst, seed), ArgumentError);
  }

  TEST_CASE("configuration examples") {
    const Instance single(Graph(1, {}), P(3, "0.5"));
    const Vertex zero[] = {0};
    CHECK(feasible_block_configs(single, minimal_permissive_block(single, zero)).size() == 3);

    const Instance star(gen::star(5), P(7, "0"));
    const Vertex leaf[] = {1};
    CHECK(feasible_block_configs(star, minimal_permissive_block(star, leaf)).size() == 42);

    Pinning pins(3);
    pins.pin(0, 0);
    pins.pin(2, 1);
    const Instance pinned(gen::path(3), P(3, "0"), pins);
    const Vertex mid[] = {1};
    const auto cfg = feasible_block_configs(pinned, minimal_permissive_block(pinned, mid));
    REQUIRE(cfg.size() == 1);
    CHECK(cfg[0][0] == 2);
  }

  TEST_CASE("proper configurations match a filter over all assignments") {
    for (const auto& entry : testing::make_corpus(120, 23)) {
      const Instance& inst = entry.instance;
      if (!inst.params.is_coloring()) continue;
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        if (inst.pinning.is_pinned(v)) continue;
        const Vertex seed[] = {v};
        const Block b = minimal_permissive_block(inst, seed);
        const auto cfg = feasible_block_configs(inst, b);
        std::vector<std::vector<Color>> expect;
        std::vector<Color> pi(b.size(), 0);
        const int q = inst.params.q();
        while (true) {
          bool ok = true;
          for (const auto& e : b.internal_edges) ok = ok && pi[b.index_of(e.u)] != pi[b.index_of(e.v)];
          for (const auto& e : b.boundary_edges) {
            if (inst.pinning.is_pinned(e.v)) ok = ok && pi[b.index_of(e.u)] != inst.pinning.color(e.v);
          }
          if (ok) expect.push_back(pi);
          std::size_t k = b.size();
          while (k > 0 && ++pi[k - 1] == q) pi[--k] = 0;
          if (k == 0) break;
        }
        INFO(entry.label);
        REQUIRE(cfg.size() == expect.size());
        for (std::size_t r = 0; r < cfg.size(); ++r) {
          CHECK(std::vector<Color>(cfg[r].begin(), cfg[r].end()) == expect[r]);
        }
      }
    }
  }

  TEST_CASE("configuration budget") {
    const Instance inst(gen::path(12), P(5, "0.5"));
    const Block b = minimal_permissive_block(inst, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK_THROWS_AS(feasible_block_configs(inst, b, 1000), BudgetError);
  }

  TEST_CASE("block weight") {
    const Instance inst(gen::path(2), P(3, "0.5"));
    const Block b = minimal_permissive_block(inst, std::vector<Vertex>{0, 1});
    const Color same[] = {1, 1};
    const Color diff[] = {0, 1};
    CHECK(block_weight(inst.params, b, same) == doctest::Approx(0.5));
    CHECK(block_weight(inst.params, b, diff) == 1.0);
  }

  TEST_CASE("locally sparse on a low-degree path") {
    const auto r = verify_locally_sparse(gen::path(20), P(7, "0"), 5);
    CHECK(r.worst_ratio == doctest::Approx(6.0 / (5.0 + std::log(20.0))));
    CHECK(r.worst_block_size == 6);
    CHECK(r.paths_tested == 19 + 18 + 17 + 16 + 15);
  }

  TEST_CASE("locally sparse on a complete graph") {
    const auto r = verify_locally_sparse(gen::complete(8), P(3, "0"), 3);
    CHECK(r.worst_block_size == 8);
    CHECK(r.worst_ratio == doctest::Approx(8.0 / (1.0 + std::log(8.0))));
  }

  TEST_CASE("locally sparse on a caterpillar matches the closure oracle") {
    const Graph g = gen::caterpillar(10, 3);
    const auto params = P(5, "0");
    const auto r = verify_locally_sparse(g, params, 3);
    const Instance inst(g, params);
    const auto spine = naive_closure(inst, {3, 4, 5, 6});
    // Spine vertices have degree >= 4, above the threshold, so any path
    // touching the spine pulls in the whole spine; worst is bristle-spine.
    CHECK(spine.size() == 10);
    CHECK(naive_closure(inst, {10, 0}).size() == 11);
    CHECK(r.worst_block_size == 11);
    CHECK(r.worst_ratio == doctest::Approx(11.0 / (1.0 + std::log(40.0))));
  }

  TEST_CASE("sampled mode is reproducible and bounded by exhaustive") {
    const Graph g = gen::gnp(60, 3.0, 4);
    SparseOptions opts;
    opts.mode = SparseMode::kSampled;
    opts.trials = 500;
    opts.seed = 9;
    const auto a = verify_locally_sparse(g, P(6, "0"), 4, opts);
    const auto b = verify_locally_sparse(g, P(6, "0"), 4, opts);
    CHECK(a.worst_ratio == b.worst_ratio);
    CHECK(a.worst_path == b.worst_path);
    const auto full = verify_locally_sparse(g, P(6, "0"), 4);
    CHECK(a.worst_ratio <= full.worst_ratio);
  }

  TEST_CASE("exhaustive mode budget") {
    SparseOptions opts;
    opts.path_budget = 100;
    CHECK_THROWS_AS(verify_locally_sparse(gen::complete(7), P(3, "0"), 4, opts), BudgetError);
  }
}
