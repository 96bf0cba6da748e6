#include "potts/blocks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "potts/errors.hpp"

namespace potts {

bool Block::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::size_t Block::index_of(Vertex v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  return static_cast<std::size_t>(it - vertices.begin());
}

Block minimal_permissive_block(const InstanceView& view, std::span<const Vertex> seeds) {
  if (seeds.empty()) throw ArgumentError("block seed set must be nonempty");
  Block block;
  block.vertices.assign(seeds.begin(), seeds.end());
  std::sort(block.vertices.begin(), block.vertices.end());
  block.vertices.erase(std::unique(block.vertices.begin(), block.vertices.end()),
                       block.vertices.end());
  for (Vertex s : block.vertices) {
    if (s >= view.num_vertices()) throw ArgumentError("block seed out of range");
    if (view.is_pinned(s)) throw ArgumentError("block seeds must be free vertices");
  }

  // Free high-degree vertices on the outer boundary; may hold duplicates.
  std::vector<Vertex> frontier;
  const auto push_violations = [&](Vertex u) {
    view.for_each_neighbor(u, [&](Vertex w, EdgeId) {
      if (!view.is_pinned(w) && !view.is_low_degree(w) && !block.contains(w)) {
        frontier.push_back(w);
      }
    });
  };
  for (Vertex s : block.vertices) push_violations(s);

  while (!frontier.empty()) {
    const auto lowest = std::min_element(frontier.begin(), frontier.end());
    const Vertex w = *lowest;
    frontier.erase(std::remove(frontier.begin(), frontier.end(), w), frontier.end());
    if (block.contains(w)) continue;
    block.vertices.insert(std::lower_bound(block.vertices.begin(), block.vertices.end(), w), w);
    push_violations(w);
  }

  for (Vertex u : block.vertices) {
    bool on_boundary = false;
    view.for_each_neighbor(u, [&](Vertex w, EdgeId e) {
      if (block.contains(w)) {
        if (u < w) {
          block.internal_edges.push_back({u, w});
          block.internal_edge_ids.push_back(e);
        }
      } else {
        block.boundary_edges.push_back({u, w});
        block.boundary_edge_ids.push_back(e);
        on_boundary = true;
      }
    });
    if (on_boundary) block.inner_boundary.push_back(u);
  }
  return block;
}

Block minimal_permissive_block(const Instance& instance, std::span<const Vertex> seeds) {
  InstanceView view(instance);
  return minimal_permissive_block(view, seeds);
}

namespace {

void check_budget(std::size_t count, std::size_t max_configs) {
  if (count > max_configs) {
    throw BudgetError("block has more than " + std::to_string(max_configs) +
                      " feasible configurations");
  }
}

BlockConfigs all_configs(int q, std::size_t width, std::size_t max_configs) {
  std::size_t total = 1;
  const auto colors = static_cast<std::size_t>(q);
  for (std::size_t k = 0; k < width; ++k) {
    if (total > max_configs / colors) check_budget(max_configs + 1, max_configs);
    total *= colors;
  }
  BlockConfigs out;
  out.width = width;
  out.colors.reserve(total * width);
  std::vector<Color> odometer(width, 0);
  for (std::size_t r = 0; r < total; ++r) {
    out.colors.insert(out.colors.end(), odometer.begin(), odometer.end());
    for (std::size_t k = width; k-- > 0;) {
      if (++odometer[k] < q) break;
      odometer[k] = 0;
    }
  }
  return out;
}

// Proper colorings of G[B] that avoid pinned neighbors' colors. Backtracking
// with forward checking, branching on the vertex with the fewest remaining
// colors (ties: lowest index); rows are sorted afterwards.
class ProperBlockColorings {
 public:
  ProperBlockColorings(const InstanceView& view, const Block& block, std::size_t max_configs)
      : q_(view.params().q()), width_(block.size()), max_configs_(max_configs) {
    if (q_ > 64) throw ArgumentError("proper block enumeration supports q <= 64");
    const std::uint64_t all = q_ == 64 ? ~0ULL : ((1ULL << q_) - 1);
    domain_.assign(width_, all);
    adjacency_.resize(width_);
    for (std::size_t k = 0; k < width_; ++k) {
      view.for_each_neighbor(block.vertices[k], [&](Vertex w, EdgeId) {
        if (view.is_pinned(w)) {
          domain_[k] &= ~(1ULL << view.pinned_color(w));
        } else if (block.contains(w)) {
          adjacency_[k].push_back(block.index_of(w));
        }
      });
    }
    assignment_.assign(width_, kNoColor);
  }

  BlockConfigs run() {
    search(0);
    std::vector<std::size_t> order(rows_.size() / std::max<std::size_t>(width_, 1));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(rows_.begin() + a * width_, rows_.begin() + (a + 1) * width_,
                                          rows_.begin() + b * width_, rows_.begin() + (b + 1) * width_);
    });
    BlockConfigs out;
    out.width = width_;
    out.colors.reserve(rows_.size());
    for (std::size_t r : order) {
      out.colors.insert(out.colors.end(), rows_.begin() + r * width_, rows_.begin() + (r + 1) * width_);
    }
    return out;
  }

 private:
  void search(std::size_t assigned) {
    if (assigned == width_) {
      check_budget(rows_.size() / width_ + 1, max_configs_);
      rows_.insert(rows_.end(), assignment_.begin(), assignment_.end());
      return;
    }
    std::size_t pick = width_;
    int best = 65;
    for (std::size_t k = 0; k < width_; ++k) {
      if (assignment_[k] != kNoColor) continue;
      const int remaining = std::popcount(domain_[k]);
      if (remaining < best) {
        best = remaining;
        pick = k;
      }
    }
    std::uint64_t options = domain_[pick];
    while (options) {
      const Color c = static_cast<Color>(std::countr_zero(options));
      options &= options - 1;
      const std::uint64_t bit = 1ULL << c;
      assignment_[pick] = c;
      const std::size_t mark = trail_.size();
      bool dead = false;
      for (std::size_t w : adjacency_[pick]) {
        if (assignment_[w] != kNoColor || !(domain_[w] & bit)) continue;
        domain_[w] &= ~bit;
        trail_.push_back(w);
        if (domain_[w] == 0) dead = true;
      }
      if (!dead) search(assigned + 1);
      while (trail_.size() > mark) {
        domain_[trail_.back()] |= bit;
        trail_.pop_back();
      }
      assignment_[pick] = kNoColor;
    }
  }

  int q_;
  std::size_t width_;
  std::size_t max_configs_;
  std::vector<std::uint64_t> domain_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Color> assignment_;
  std::vector<std::size_t> trail_;
  std::vector<Color> rows_;
};

}  // namespace

BlockConfigs feasible_block_configs(const InstanceView& view, const Block& block,
                                    std::size_t max_configs) {
  if (block.vertices.empty()) throw ArgumentError("empty block");
  if (!view.params().is_coloring()) {
    return all_configs(view.params().q(), block.size(), max_configs);
  }
  return ProperBlockColorings(view, block, max_configs).run();
}

BlockConfigs feasible_block_configs(const Instance& instance, const Block& block,
                                    std::size_t max_configs) {
  InstanceView view(instance);
  return feasible_block_configs(view, block, max_configs);
}

double block_weight(const PottsParams& params, const Block& block, std::span<const Color> config) {
  std::size_t mono = 0;
  for (const auto& e : block.internal_edges) {
    if (config[block.index_of(e.u)] == config[block.index_of(e.v)]) ++mono;
  }
  return mono == 0 ? 1.0 : std::pow(params.beta(), static_cast<double>(mono));
}

std::string to_string(SparseMode mode) {
  return mode == SparseMode::kExhaustive ? "exhaustive" : "sampled";
}

SparseReport verify_locally_sparse(const Graph& g, const PottsParams& params, std::size_t l_max,
                                   const SparseOptions& options) {
  if (l_max < 1) throw ArgumentError("verify_locally_sparse: l_max must be >= 1");
  const Instance instance(g, params);
  const InstanceView view(instance);
  const double log_n = std::log(static_cast<double>(g.num_vertices()));

  SparseReport report;
  report.l_max = l_max;
  report.mode = options.mode;

  const auto consider = [&](std::span<const Vertex> path) {
    const std::size_t length = path.size() - 1;
    const Block block = minimal_permissive_block(view, path);
    const double ratio = static_cast<double>(block.size()) / (static_cast<double>(length) + log_n);
    ++report.paths_tested;
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_path.assign(path.begin(), path.end());
      report.worst_block_size = block.size();
    }
  };

  std::vector<char> on_path(g.num_vertices(), 0);
  std::vector<Vertex> path;

  if (options.mode == SparseMode::kExhaustive) {
    // Each undirected path once: keep the orientation whose first vertex is
    // smaller than its last.
    std::vector<std::vector<Vertex>> paths;
    const auto extend = [&](auto&& self) -> void {
      if (path.size() >= 2 && path.front() < path.back()) {
        if (paths.size() >= options.path_budget) {
          throw BudgetError("more than " + std::to_string(options.path_budget) +
                            " simple paths of length <= " + std::to_string(l_max) +
                            "; use sampled mode");
        }
        paths.push_back(path);
      }
      if (path.size() == l_max + 1) return;
      for (Vertex w : g.neighbors(path.back())) {
        if (on_path[w]) continue;
        on_path[w] = 1;
        path.push_back(w);
        self(self);
        path.pop_back();
        on_path[w] = 0;
      }
    };
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
      path.assign(1, s);
      on_path[s] = 1;
      extend(extend);
      on_path[s] = 0;
    }
    for (const auto& p : paths) consider(p);
    return report;
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<Vertex> pick_start(0, static_cast<Vertex>(g.num_vertices() - 1));
  std::uniform_int_distribution<std::size_t> pick_length(1, l_max);
  std::vector<Vertex> choices;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Vertex s = pick_start(rng);
    const std::size_t target = pick_length(rng);
    path.assign(1, s);
    on_path[s] = 1;
    while (path.size() <= target) {
      choices.clear();
      for (Vertex w : g.neighbors(path.back())) {
        if (!on_path[w]) choices.push_back(w);
      }
      if (choices.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
      const Vertex w = choices[pick(rng)];
      on_path[w] = 1;
      path.push_back(w);
    }
    for (Vertex u : path) on_path[u] = 0;
    if (path.size() >= 2) consider(path);
  }
  return report;
}

}  // namespace potts
