#include "potts/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "potts/errors.hpp"

namespace potts::exact {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class WorkBudget {
 public:
  explicit WorkBudget(std::uint64_t limit) : limit_(limit) {}
  void spend() {
    if (++used_ > limit_) {
      throw BudgetError("exact enumeration exceeded its budget of " + std::to_string(limit_) +
                        " evaluations");
    }
  }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

// Free vertices grouped into connected components of the free subgraph, each
// listed in BFS order from its smallest vertex.
std::vector<std::vector<Vertex>> free_components(const Instance& instance) {
  const auto& g = instance.graph;
  const auto& pins = instance.pinning;
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (seen[s] || pins.is_pinned(s)) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : g.neighbors(comp[head])) {
        if (!seen[w] && !pins.is_pinned(w)) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// Depth-first enumeration of one vertex sequence. The weight is built
// incrementally: placing vertex k with color c multiplies by
// beta^{#earlier neighbors colored c + #pinned neighbors colored c}.
class Enumerator {
 public:
  Enumerator(const Instance& instance, std::vector<Vertex> order, WorkBudget& budget)
      : instance_(instance), order_(std::move(order)), budget_(budget) {
    const auto& g = instance.graph;
    const int q = instance.params.q();
    std::vector<std::size_t> position(g.num_vertices(), kAbsent);
    for (std::size_t k = 0; k < order_.size(); ++k) position[order_[k]] = k;

    earlier_.resize(order_.size());
    pinned_hits_.assign(order_.size() * q, 0);
    std::size_t max_hits = 0;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      for (Vertex w : g.neighbors(order_[k])) {
        if (instance.pinning.is_pinned(w)) {
          ++pinned_hits_[k * q + instance.pinning.color(w)];
        } else if (position[w] != kAbsent && position[w] < k) {
          earlier_[k].push_back(position[w]);
        }
      }
      max_hits = std::max(max_hits, g.degree(order_[k]));
    }
    beta_power_.resize(max_hits + 1);
    for (std::size_t e = 0; e <= max_hits; ++e) {
      beta_power_[e] = e == 0 ? 1.0 : std::pow(instance.params.beta(), static_cast<double>(e));
    }
    colors_.assign(order_.size(), kNoColor);
  }

  // leaf(colors, weight) -> bool; returning false stops the enumeration.
  template <class Leaf>
  void run(Leaf&& leaf) {
    stopped_ = false;
    descend(0, 1.0, leaf);
  }

  const std::vector<Vertex>& order() const { return order_; }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  template <class Leaf>
  void descend(std::size_t k, double w, Leaf& leaf) {
    if (k == order_.size()) {
      if (!leaf(std::span<const Color>(colors_), w)) stopped_ = true;
      return;
    }
    const int q = instance_.params.q();
    for (Color c = 0; c < q && !stopped_; ++c) {
      budget_.spend();
      std::size_t hits = pinned_hits_[k * q + c];
      for (std::size_t j : earlier_[k]) hits += colors_[j] == c;
      const double factor = beta_power_[hits];
      if (factor == 0.0) continue;
      colors_[k] = c;
      descend(k + 1, w * factor, leaf);
    }
    colors_[k] = kNoColor;
  }

  const Instance& instance_;
  std::vector<Vertex> order_;
  WorkBudget& budget_;
  std::vector<std::vector<std::size_t>> earlier_;
  std::vector<std::uint32_t> pinned_hits_;
  std::vector<double> beta_power_;
  std::vector<Color> colors_;
  bool stopped_ = false;
};

// beta^{#monochromatic edges between pinned vertices}; 0 or positive.
double pinned_factor(const Instance& instance) {
  std::size_t mono = 0;
  for (const auto& e : instance.graph.edges()) {
    if (instance.pinning.is_pinned(e.u) && instance.pinning.is_pinned(e.v) &&
        instance.pinning.color(e.u) == instance.pinning.color(e.v)) {
      ++mono;
    }
  }
  return mono == 0 ? 1.0 : std::pow(instance.params.beta(), static_cast<double>(mono));
}

double component_partition(const Instance& instance, std::vector<Vertex> comp, WorkBudget& budget) {
  Enumerator en(instance, std::move(comp), budget);
  CompensatedSum z;
  en.run([&](std::span<const Color>, double w) {
    z.add(w);
    return true;
  });
  return z.value();
}

bool component_feasible(const Instance& instance, std::vector<Vertex> comp, WorkBudget& budget) {
  Enumerator en(instance, std::move(comp), budget);
  bool found = false;
  en.run([&](std::span<const Color>, double) {
    found = true;
    return false;
  });
  return found;
}

void check_vertex(const Instance& instance, Vertex v) {
  if (v >= instance.num_vertices()) throw ArgumentError("vertex out of range");
}

}  // namespace

double log_partition(const Instance& instance, std::uint64_t budget) {
  WorkBudget work(budget);
  const double fixed = pinned_factor(instance);
  if (fixed == 0.0) return -std::numeric_limits<double>::infinity();
  double log_z = std::log(fixed);
  for (auto& comp : free_components(instance)) {
    const double z = component_partition(instance, std::move(comp), work);
    if (z == 0.0) return -std::numeric_limits<double>::infinity();
    log_z += std::log(z);
  }
  return log_z;
}

double partition(const Instance& instance, std::uint64_t budget) {
  return std::exp(log_partition(instance, budget));
}

bool is_feasible(const Instance& instance, std::uint64_t budget) {
  if (pinned_factor(instance) == 0.0) return false;
  if (!instance.params.is_coloring()) return true;
  WorkBudget work(budget);
  for (auto& comp : free_components(instance)) {
    if (!component_feasible(instance, std::move(comp), work)) return false;
  }
  return true;
}

std::vector<double> marginals(const Instance& instance, Vertex v, std::uint64_t budget) {
  check_vertex(instance, v);
  const int q = instance.params.q();
  std::vector<double> out(q, 0.0);
  if (instance.pinning.is_pinned(v)) {
    out[instance.pinning.color(v)] = 1.0;
    return out;
  }
  WorkBudget work(budget);
  if (pinned_factor(instance) == 0.0) throw InfeasibleError("instance is infeasible");

  std::vector<Vertex> own;
  for (auto& comp : free_components(instance)) {
    if (std::find(comp.begin(), comp.end(), v) != comp.end()) {
      own = std::move(comp);
    } else if (instance.params.is_coloring() && !component_feasible(instance, comp, work)) {
      throw InfeasibleError("instance is infeasible");
    }
  }
  const std::size_t slot =
      static_cast<std::size_t>(std::find(own.begin(), own.end(), v) - own.begin());
  Enumerator en(instance, std::move(own), work);
  std::vector<CompensatedSum> by_color(q);
  CompensatedSum z;
  en.run([&](std::span<const Color> colors, double w) {
    by_color[colors[slot]].add(w);
    z.add(w);
    return true;
  });
  const double total = z.value();
  if (total == 0.0) throw InfeasibleError("instance is infeasible");
  for (int c = 0; c < q; ++c) out[c] = by_color[c].value() / total;
  return out;
}

double marginal(const Instance& instance, Vertex v, Color x, std::uint64_t budget) {
  if (x < 0 || x >= instance.params.q()) throw ArgumentError("color out of range");
  return marginals(instance, v, budget)[x];
}

double block_marginal(const Instance& instance, std::span<const Vertex> vertices,
                      std::span<const Color> config, std::uint64_t budget) {
  if (vertices.size() != config.size()) throw ArgumentError("block configuration size mismatch");
  const double log_z = log_partition(instance, budget);
  if (std::isinf(log_z)) throw InfeasibleError("instance is infeasible");

  Pinning pins = instance.pinning;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    check_vertex(instance, vertices[k]);
    if (config[k] < 0 || config[k] >= instance.params.q()) throw ArgumentError("color out of range");
    if (pins.is_pinned(vertices[k])) {
      if (pins.color(vertices[k]) != config[k]) return 0.0;
      continue;
    }
    pins.pin(vertices[k], config[k]);
  }
  const Instance fixed(instance.graph, instance.params, std::move(pins));
  const double log_zb = log_partition(fixed, budget);
  if (std::isinf(log_zb)) return 0.0;
  return std::exp(log_zb - log_z);
}

GibbsTable gibbs_table(const Instance& instance, std::uint64_t budget) {
  WorkBudget work(budget);
  GibbsTable table;
  const double fixed = pinned_factor(instance);
  if (fixed == 0.0) return table;

  std::vector<Vertex> free;
  for (Vertex v = 0; v < instance.num_vertices(); ++v) {
    if (!instance.pinning.is_pinned(v)) free.push_back(v);
  }
  Enumerator en(instance, free, work);
  Coloring base(instance.pinning.colors().begin(), instance.pinning.colors().end());
  CompensatedSum z;
  en.run([&](std::span<const Color> colors, double w) {
    Coloring full = base;
    for (std::size_t k = 0; k < free.size(); ++k) full[free[k]] = colors[k];
    table.configurations.push_back(std::move(full));
    table.weights.push_back(w * fixed);
    z.add(w * fixed);
    return true;
  });
  table.total = z.value();
  return table;
}

}  // namespace potts::exact
