#include "potts/sampling.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "potts/errors.hpp"
#include "potts/exact.hpp"
#include "potts/rng.hpp"

namespace potts {

namespace {

// Draws every free vertex in ascending order from conditional(work, v),
// pinning it in `work` before moving on.
template <class Conditional>
Sample sequential_sample(const Instance& instance, std::uint64_t seed, Conditional&& conditional) {
  Instance work = instance;
  Sample out;
  std::uint64_t draw = 0;
  for (Vertex v = 0; v < instance.num_vertices(); ++v) {
    if (work.pinning.is_pinned(v)) continue;
    const std::vector<double> dist = conditional(work, v);
    double total = 0.0;
    for (double p : dist) total += p;
    if (!(total > 0.0)) {
      throw InfeasibleError("conditional distribution of vertex " + std::to_string(v) +
                            " is identically zero");
    }
    const double u = to_unit_interval(counter_hash(seed, draw++)) * total;
    Color pick = kNoColor;
    double acc = 0.0;
    for (Color c = 0; c < static_cast<Color>(dist.size()); ++c) {
      if (dist[c] <= 0.0) continue;
      pick = c;
      acc += dist[c];
      if (u < acc) break;
    }
    out.log_proposal += std::log(dist[pick] / total);
    work.pinning.pin(v, pick);
  }
  out.coloring.assign(work.pinning.colors().begin(), work.pinning.colors().end());
  return out;
}

}  // namespace

Sample sample_config(const Instance& instance, int depth, std::uint64_t seed,
                     const MargOptions& options) {
  require_algorithmic_range(instance.params);
  MargDiagnostics diagnostics;
  auto out = sequential_sample(instance, seed, [&](const Instance& work, Vertex v) {
    InstanceView view(work);
    MarginalEstimator estimator(view, options);
    auto raw = estimator.estimate(v, depth);
    diagnostics.merge(estimator.diagnostics());
    return raw;
  });
  out.diagnostics = diagnostics;
  return out;
}

Sample sample_config_with(const Instance& instance, std::uint64_t seed,
                          const ConditionalDistribution& conditional) {
  return sequential_sample(instance, seed, conditional);
}

SampleBatch sample_batch(const Instance& instance, int depth, std::uint64_t seed,
                         std::size_t count, const MargOptions& options, std::size_t threads) {
  if (threads == 0) throw ArgumentError("thread count must be positive");
  std::vector<Sample> samples(count);
  std::vector<std::exception_ptr> failures(threads);
  const auto work = [&](std::size_t worker) {
    try {
      for (std::size_t k = worker; k < count; k += threads) {
        samples[k] = sample_config(instance, depth, counter_hash(seed, k), options);
      }
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  SampleBatch batch;
  batch.seed = seed;
  batch.depth = depth;
  batch.configurations.reserve(count);
  batch.log_proposal.reserve(count);
  for (auto& s : samples) {
    batch.configurations.push_back(std::move(s.coloring));
    batch.log_proposal.push_back(s.log_proposal);
    batch.diagnostics.merge(s.diagnostics);
  }
  return batch;
}

double empirical_tv(const std::vector<Coloring>& samples, const Instance& instance,
                    std::uint64_t budget) {
  if (samples.empty()) throw ArgumentError("empirical_tv needs at least one sample");
  const auto table = exact::gibbs_table(instance, budget);
  if (!(table.total > 0.0)) throw InfeasibleError("instance is infeasible");

  std::map<Coloring, double> empirical;
  const double unit = 1.0 / static_cast<double>(samples.size());
  for (const auto& s : samples) {
    if (s.size() != instance.num_vertices()) throw ArgumentError("sample size mismatch");
    empirical[s] += unit;
  }
  double tv = 0.0;
  for (std::size_t k = 0; k < table.configurations.size(); ++k) {
    const double gibbs = table.probability(k);
    const auto it = empirical.find(table.configurations[k]);
    if (it == empirical.end()) {
      tv += gibbs;
    } else {
      tv += std::abs(it->second - gibbs);
      empirical.erase(it);
    }
  }
  for (const auto& [config, mass] : empirical) tv += mass;
  return 0.5 * tv;
}

}  // namespace potts
