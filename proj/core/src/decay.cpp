#include "potts/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "potts/errors.hpp"

namespace potts {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_vertex(std::size_t n, Vertex v) {
  if (v >= n) throw ArgumentError("vertex " + std::to_string(v) + " out of range");
}

void sort_unique(std::vector<Vertex>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// Distances from v inside G[B] over active edges; SIZE_MAX if unreachable.
std::vector<std::size_t> block_distances(const InstanceView& view, const Block& block, Vertex v) {
  std::vector<std::size_t> dist(block.size(), std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> queue{block.index_of(v)};
  dist[queue[0]] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t a = queue[head];
    view.for_each_neighbor(block.vertices[a], [&](Vertex w, EdgeId) {
      if (!block.contains(w)) return;
      const std::size_t b = block.index_of(w);
      if (dist[b] == std::numeric_limits<std::size_t>::max()) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
    });
  }
  return dist;
}

// Sibling sub-instances that agree on every pin a finished evaluation read
// share its result.
class SiblingCache {
 public:
  const std::vector<double>* find(std::span<const Color> rho) const {
    for (const auto& group : groups_) {
      const auto it = group.results.find(project(group.positions, rho));
      if (it != group.results.end()) return &it->second;
    }
    return nullptr;
  }

  void insert(std::vector<std::size_t> positions, std::span<const Color> rho,
              std::vector<double> result) {
    auto it = std::find_if(groups_.begin(), groups_.end(),
                           [&](const Group& g) { return g.positions == positions; });
    if (it == groups_.end()) {
      groups_.push_back({std::move(positions), {}});
      it = std::prev(groups_.end());
    }
    it->results.emplace(project(it->positions, rho), std::move(result));
  }

 private:
  struct Group {
    std::vector<std::size_t> positions;
    std::map<std::vector<Color>, std::vector<double>> results;
  };

  static std::vector<Color> project(const std::vector<std::size_t>& positions,
                                    std::span<const Color> rho) {
    std::vector<Color> key;
    key.reserve(positions.size());
    for (std::size_t p : positions) key.push_back(rho[p]);
    return key;
  }

  std::vector<Group> groups_;
};

}  // namespace

void MargDiagnostics::merge(const MargDiagnostics& other) {
  recursive_calls += other.recursive_calls;
  shared_calls += other.shared_calls;
  termination_events += other.termination_events;
  max_block_size = std::max(max_block_size, other.max_block_size);
  max_f_size = std::max(max_f_size, other.max_f_size);
  infeasible_base_case = infeasible_base_case || other.infeasible_base_case;
}

MarginalEstimator::MarginalEstimator(InstanceView& view, MargOptions options)
    : view_(view), options_(options), pinned_by_(view.num_vertices(), 0) {
  require_algorithmic_range(view.params());
}

void MarginalEstimator::start_clock() {
  deadline_.reset();
  if (options_.time_limit) deadline_ = std::chrono::steady_clock::now() + *options_.time_limit;
}

void MarginalEstimator::check_deadline() {
  if (!deadline_ || diagnostics_.recursive_calls % 256 != 0) return;
  if (std::chrono::steady_clock::now() > *deadline_) {
    throw BudgetError("marginal estimation exceeded its time limit of " +
                      std::to_string(options_.time_limit->count()) + " ms");
  }
}

std::vector<double> MarginalEstimator::estimate(Vertex v, int depth) {
  check_vertex(view_.num_vertices(), v);
  start_clock();
  std::vector<Vertex> reads;
  auto out = vertex_estimate(v, depth, reads);
  deadline_.reset();
  return out;
}

std::vector<double> MarginalEstimator::block_estimate(Vertex v, const Block& block,
                                                      const BlockConfigs& configs, int depth) {
  check_vertex(view_.num_vertices(), v);
  if (!block.contains(v)) throw ArgumentError("block does not contain the vertex");
  start_clock();
  std::vector<Vertex> reads;
  auto out = block_probabilities(v, block, configs, depth, reads);
  deadline_.reset();
  return out;
}

std::vector<double> MarginalEstimator::vertex_estimate(Vertex v, int depth,
                                                       std::vector<Vertex>& reads) {
  ++diagnostics_.recursive_calls;
  check_deadline();
  const auto& params = view_.params();
  const int q = params.q();
  std::vector<double> out(q, 0.0);

  if (view_.is_pinned(v)) {
    reads.push_back(v);
    out[view_.pinned_color(v)] = 1.0;
    return out;
  }
  if (!params.is_coloring() && depth < 0) {
    ++diagnostics_.termination_events;
    std::fill(out.begin(), out.end(), 1.0 / q);
    return out;
  }

  const Vertex seed[] = {v};
  const Block block = minimal_permissive_block(view_, seed);
  if (block.size() > options_.max_block_size) {
    throw BudgetError("block of size " + std::to_string(block.size()) + " exceeds the limit of " +
                      std::to_string(options_.max_block_size));
  }
  const BlockConfigs configs =
      feasible_block_configs(view_, block, options_.max_block_configs);
  diagnostics_.max_block_size = std::max(diagnostics_.max_block_size, block.size());
  diagnostics_.max_f_size = std::max(diagnostics_.max_f_size, configs.size());
  const std::size_t slot = block.index_of(v);

  if (params.is_coloring()) {
    // F(B) depends on the colors of pinned outer neighbors.
    for (const auto& e : block.boundary_edges) {
      if (view_.is_pinned(e.v)) reads.push_back(e.v);
    }
    if (configs.empty()) {
      diagnostics_.infeasible_base_case = true;
      if (depth < 0) ++diagnostics_.termination_events;
      return out;
    }
    if (depth < 0) {
      ++diagnostics_.termination_events;
      for (std::size_t r = 0; r < configs.size(); ++r) out[configs[r][slot]] = 1.0 / q;
      return out;
    }
  }

  const auto probs = block_probabilities(v, block, configs, depth, reads);
  for (std::size_t r = 0; r < configs.size(); ++r) out[configs[r][slot]] += probs[r];
  const double cap = clamped_marginal_upper_bound(params, view_.degree(v));
  for (double& p : out) p = std::min(p, cap);
  return out;
}

std::vector<double> MarginalEstimator::block_probabilities(Vertex v, const Block& block,
                                                           const BlockConfigs& configs, int depth,
                                                           std::vector<Vertex>& reads) {
  const std::size_t m = block.boundary_edges.size();
  const auto lengths = escape_lengths(view_, block, v);
  std::vector<std::size_t> anchor(m);
  for (std::size_t i = 0; i < m; ++i) anchor[i] = block.index_of(block.boundary_edges[i].u);

  SubMarginals sub;
  sub.num_configs = configs.size();
  sub.values.assign(m * configs.size(), 0.0);

  const std::uint64_t frame = ++next_frame_;
  const auto outer = view_.checkpoint();
  for (EdgeId e : block.internal_edge_ids) view_.remove_edge(e);
  for (std::size_t i = 0; i < m; ++i) {
    // Omega_i: boundary edges j >= i removed, u_j pinned for j < i.
    const auto level = view_.checkpoint();
    for (std::size_t j = i; j < m; ++j) view_.remove_edge(block.boundary_edge_ids[j]);
    for (std::size_t j = 0; j < i; ++j) pinned_by_[block.boundary_edges[j].u] = frame;

    const Vertex target = block.boundary_edges[i].v;
    const int child_depth = depth - static_cast<int>(lengths[i]);
    SiblingCache cache;
    for (std::size_t r = 0; r < configs.size(); ++r) {
      const auto rho = configs[r];
      const Color wanted = rho[anchor[i]];
      if (options_.share_subresults) {
        if (const auto* hit = cache.find(rho)) {
          ++diagnostics_.shared_calls;
          sub.at(i, r) = (*hit)[wanted];
          continue;
        }
      }
      const auto pins = view_.checkpoint();
      for (std::size_t j = 0; j < i; ++j) view_.pin(block.boundary_edges[j].u, rho[anchor[j]]);
      std::vector<Vertex> child_reads;
      auto result = vertex_estimate(target, child_depth, child_reads);
      view_.rollback(pins);

      sort_unique(child_reads);
      std::vector<std::size_t> positions;
      for (Vertex w : child_reads) {
        if (pinned_by_[w] == frame) {
          positions.push_back(block.index_of(w));
        } else {
          reads.push_back(w);
        }
      }
      sub.at(i, r) = result[wanted];
      if (options_.share_subresults) cache.insert(std::move(positions), rho, std::move(result));
    }

    for (std::size_t j = 0; j < i; ++j) pinned_by_[block.boundary_edges[j].u] = 0;
    view_.rollback(level);
  }
  view_.rollback(outer);
  sort_unique(reads);
  return block_recursion(view_.params(), block, configs, sub);
}

std::vector<double> block_recursion(const PottsParams& params, const Block& block,
                                    const BlockConfigs& configs, const SubMarginals& sub) {
  const std::size_t m = block.boundary_edges.size();
  const double log_beta = params.is_coloring() ? kNegInf : std::log(params.beta());
  const double one_minus_beta = 1.0 - params.beta();
  std::vector<std::size_t> anchor(m);
  for (std::size_t i = 0; i < m; ++i) anchor[i] = block.index_of(block.boundary_edges[i].u);
  std::vector<std::pair<std::size_t, std::size_t>> internal;
  for (const auto& e : block.internal_edges) {
    internal.emplace_back(block.index_of(e.u), block.index_of(e.v));
  }

  std::vector<double> log_w(configs.size(), 0.0);
  double top = kNegInf;
  for (std::size_t r = 0; r < configs.size(); ++r) {
    const auto rho = configs[r];
    std::size_t mono = 0;
    for (const auto& [a, b] : internal) mono += rho[a] == rho[b];
    double lw = mono == 0 ? 0.0 : static_cast<double>(mono) * log_beta;
    for (std::size_t i = 0; i < m && lw != kNegInf; ++i) {
      const double f = 1.0 - one_minus_beta * sub.at(i, r);
      lw = f > 0.0 ? lw + std::log(f) : kNegInf;
    }
    log_w[r] = lw;
    top = std::max(top, lw);
  }
  if (top == kNegInf) throw InfeasibleError("infeasible sub-instance: every block configuration has weight zero");

  double total = 0.0;
  for (double lw : log_w) total += std::exp(lw - top);
  const double log_total = top + std::log(total);
  std::vector<double> out(configs.size());
  for (std::size_t r = 0; r < configs.size(); ++r) out[r] = std::exp(log_w[r] - log_total);
  return out;
}

MargResult marg(const Instance& instance, Vertex v, Color x, int depth,
                const MargOptions& options) {
  if (instance.params.is_coloring()) throw ArgumentError("marg requires beta > 0");
  if (x < 0 || x >= instance.params.q()) throw ArgumentError("color out of range");
  auto est = estimate_marginals(instance, v, depth, options);
  return {est.raw[x], est.diagnostics};
}

MargResult marg_coloring(const Instance& instance, Vertex v, Color x, int depth,
                         const MargOptions& options) {
  if (!instance.params.is_coloring()) throw ArgumentError("marg_coloring requires beta = 0");
  if (x < 0 || x >= instance.params.q()) throw ArgumentError("color out of range");
  auto est = estimate_marginals(instance, v, depth, options);
  return {est.raw[x], est.diagnostics};
}

MarginalEstimate estimate_marginals(const Instance& instance, Vertex v, int depth,
                                    const MargOptions& options) {
  InstanceView view(instance);
  MarginalEstimator estimator(view, options);
  MarginalEstimate out;
  out.raw = estimator.estimate(v, depth);
  out.diagnostics = estimator.diagnostics();
  return out;
}

MarginalDistribution marginal_distribution(const Instance& instance, Vertex v, int depth,
                                           const MargOptions& options) {
  auto est = estimate_marginals(instance, v, depth, options);
  MarginalDistribution out;
  for (double p : est.raw) out.raw_sum += p;
  if (!(out.raw_sum > 0.0)) {
    throw InfeasibleError("every color has estimated probability zero at vertex " +
                          std::to_string(v));
  }
  out.probabilities.reserve(est.raw.size());
  for (double p : est.raw) out.probabilities.push_back(p / out.raw_sum);
  out.diagnostics = est.diagnostics;
  return out;
}

double marg_block(const Instance& instance, Vertex v, const Block& block,
                  std::span<const Color> pi, int depth, const MargOptions& options) {
  if (pi.size() != block.size()) throw ArgumentError("block configuration size mismatch");
  InstanceView view(instance);
  MarginalEstimator estimator(view, options);
  const auto configs = feasible_block_configs(view, block, options.max_block_configs);
  for (std::size_t r = 0; r < configs.size(); ++r) {
    if (std::ranges::equal(configs[r], pi)) {
      return estimator.block_estimate(v, block, configs, depth)[r];
    }
  }
  return 0.0;
}

void apply_subinstance(InstanceView& view, const Block& block, std::size_t i,
                       std::span<const Color> rho) {
  const std::size_t m = block.boundary_edges.size();
  if (i < 1 || i > m + 1) throw ArgumentError("boundary index out of range");
  if (rho.size() != block.size()) throw ArgumentError("block configuration size mismatch");
  for (EdgeId e : block.internal_edge_ids) view.remove_edge(e);
  for (std::size_t j = i - 1; j < m; ++j) view.remove_edge(block.boundary_edge_ids[j]);
  for (std::size_t j = 0; j + 1 < i; ++j) {
    const Vertex u = block.boundary_edges[j].u;
    view.pin(u, rho[block.index_of(u)]);
  }
}

Instance build_subinstance(const Instance& instance, const Block& block, std::size_t i,
                           std::span<const Color> rho) {
  InstanceView view(instance);
  apply_subinstance(view, block, i, rho);
  return view.materialize();
}

std::vector<std::size_t> escape_lengths(const InstanceView& view, const Block& block, Vertex v) {
  const auto dist = block_distances(view, block, v);
  std::vector<std::size_t> out;
  out.reserve(block.boundary_edges.size());
  for (const auto& e : block.boundary_edges) {
    const std::size_t d = dist[block.index_of(e.u)];
    if (d == std::numeric_limits<std::size_t>::max()) {
      throw InvariantError("boundary vertex unreachable inside its block");
    }
    out.push_back(d + 1);
  }
  return out;
}

std::vector<SawWalk> escape_paths(const Instance& instance, const Block& block, Vertex v) {
  InstanceView view(instance);
  if (!block.contains(v)) throw ArgumentError("block does not contain the vertex");
  std::vector<SawWalk> out;
  for (const auto& e : block.boundary_edges) {
    // Distances to u inside B, then a greedy walk from v along the smallest
    // neighbor one step closer: the lexicographically smallest shortest walk.
    const auto to_u = block_distances(view, block, e.u);
    std::size_t d = to_u[block.index_of(v)];
    if (d == std::numeric_limits<std::size_t>::max()) {
      throw InvariantError("boundary vertex unreachable inside its block");
    }
    SawWalk walk{v};
    Vertex cur = v;
    while (d > 0) {
      Vertex next = cur;
      view.for_each_neighbor(cur, [&](Vertex w, EdgeId) {
        if (next == cur && block.contains(w) && to_u[block.index_of(w)] == d - 1) next = w;
      });
      cur = next;
      walk.push_back(cur);
      --d;
    }
    walk.push_back(e.v);
    out.push_back(std::move(walk));
  }
  return out;
}

int default_depth(std::size_t n, double coeff) {
  if (!(coeff > 0.0)) throw ArgumentError("depth coefficient must be positive");
  if (n <= 1) return 1;
  return std::max(1, static_cast<int>(std::ceil(coeff * std::log(static_cast<double>(n)))));
}

double error_bound(const Graph& g, Vertex v, std::size_t depth, const PottsParams& params,
                   double alpha, ErrorPrefactor prefactor) {
  check_vertex(g.num_vertices(), v);
  if (depth < 1) throw ArgumentError("error bound requires depth >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("decay rate alpha must lie in (0, 1); no contraction certified");
  }
  const double q = params.q();
  const double beta = params.beta();
  const double ratio = (q - 1.0) / (2.0 * (1.0 - beta));
  const double theta_raw = std::ceil(std::log(ratio) / std::log(1.0 / alpha));
  const std::size_t theta = std::max<std::size_t>(
      2, theta_raw > 0.0 ? static_cast<std::size_t>(theta_raw) : 0);

  double factor = 0.0;
  if (params.is_coloring()) {
    factor = static_cast<double>(g.num_vertices()) * std::log(q);
  } else {
    const double count = prefactor == ErrorPrefactor::kVertexCount
                             ? static_cast<double>(g.num_vertices())
                             : static_cast<double>(g.degree(v));
    factor = q + count * std::log(1.0 / beta);
  }
  const auto weight = potts_delta(params);
  double sum = 0.0;
  for (std::size_t k = depth + 1; k <= theta * depth && k < g.num_vertices(); ++k) {
    const double term = e_delta(g, v, k, weight);
    if (term == 0.0) break;
    sum += term;
  }
  return factor * sum;
}

}  // namespace potts
