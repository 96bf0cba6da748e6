#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "potts/blocks.hpp"
#include "potts/instance_view.hpp"
#include "potts/model.hpp"
#include "potts/saw.hpp"

namespace potts {

// Truncated correlation-decay recursion over permissive blocks.
//
// marg(Omega, v, x, l) estimates Pr[c(v) = x] by expanding the block B(v):
// every feasible block configuration rho is weighted by w_{G[B]}(rho) times
// prod_i (1 - (1-beta) p_{i,rho}), where p_{i,rho} is a recursive estimate of
// the marginal of the i-th outer boundary vertex v_i in the sub-instance
// Omega_i^rho with depth reduced by the length of the escape path to v_i.
// Once the depth drops below zero the recursion returns 1/q (beta > 0), or
// 1/q / 0 according to local feasibility of x (beta = 0).

struct MargOptions {
  std::size_t max_block_size = 64;
  std::size_t max_block_configs = 1'000'000;
  // Wall-clock limit for one top-level call; BudgetError once exceeded.
  std::optional<std::chrono::milliseconds> time_limit;
  // Evaluate a sub-instance once when sibling configurations differ only in
  // pins the evaluation never looked at. The result is bit-identical to the
  // plain recursion; only the amount of work changes.
  bool share_subresults = true;
};

struct MargDiagnostics {
  std::uint64_t recursive_calls = 0;     // vertex-level evaluations performed
  std::uint64_t shared_calls = 0;        // sub-instance evaluations answered by a sibling
  std::uint64_t termination_events = 0;  // depth-exhausted base cases reached
  std::size_t max_block_size = 0;
  std::size_t max_f_size = 0;
  bool infeasible_base_case = false;     // beta = 0 base case with empty F(B(v))

  void merge(const MargDiagnostics& other);
};

struct MargResult {
  double value = 0.0;
  MargDiagnostics diagnostics;
};

// Estimates for every color, exactly as marg would return them one color at
// a time (no normalization).
struct MarginalEstimate {
  std::vector<double> raw;
  MargDiagnostics diagnostics;
};

struct MarginalDistribution {
  std::vector<double> probabilities;  // raw estimates scaled to sum 1
  double raw_sum = 0.0;
  MargDiagnostics diagnostics;
};

// Recursion engine over a mutable view. The view is modified during a call
// and restored before it returns.
class MarginalEstimator {
 public:
  explicit MarginalEstimator(InstanceView& view, MargOptions options = {});

  // marg(view, v, x, depth) for every color x.
  std::vector<double> estimate(Vertex v, int depth);
  // Estimated probability of every row of `configs` for the block B = B(v).
  std::vector<double> block_estimate(Vertex v, const Block& block, const BlockConfigs& configs,
                                     int depth);

  const MargDiagnostics& diagnostics() const { return diagnostics_; }
  void reset_diagnostics() { diagnostics_ = {}; }

 private:
  std::vector<double> vertex_estimate(Vertex v, int depth, std::vector<Vertex>& reads);
  std::vector<double> block_probabilities(Vertex v, const Block& block,
                                          const BlockConfigs& configs, int depth,
                                          std::vector<Vertex>& reads);
  void start_clock();
  void check_deadline();

  InstanceView& view_;
  MargOptions options_;
  MargDiagnostics diagnostics_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  // Per vertex, the frame that pinned it (0: not pinned by the recursion).
  std::vector<std::uint64_t> pinned_by_;
  std::uint64_t next_frame_ = 0;
};

// beta > 0 variant (throws ArgumentError when beta = 0 or q < 3).
MargResult marg(const Instance& instance, Vertex v, Color x, int depth,
                const MargOptions& options = {});

// beta = 0 variant (throws ArgumentError when beta > 0 or q < 3).
MargResult marg_coloring(const Instance& instance, Vertex v, Color x, int depth,
                         const MargOptions& options = {});

// Dispatches on beta.
MarginalEstimate estimate_marginals(const Instance& instance, Vertex v, int depth,
                                    const MargOptions& options = {});

// Normalized estimates. Throws InfeasibleError when every estimate is zero.
MarginalDistribution marginal_distribution(const Instance& instance, Vertex v, int depth,
                                           const MargOptions& options = {});

// Estimate of Pr[c(B) = pi] for B = B(v); 0 when pi is not in F(B).
double marg_block(const Instance& instance, Vertex v, const Block& block,
                  std::span<const Color> pi, int depth, const MargOptions& options = {});

// Omega_i^rho with i in 1..m+1: edges of E(B) and boundary edges u_j v_j for
// j >= i removed, u_j pinned to rho(u_j) for j < i. Interior vertices of B
// stay in the vertex set as isolated vertices so that ids are preserved.
Instance build_subinstance(const Instance& instance, const Block& block, std::size_t i,
                           std::span<const Color> rho);
void apply_subinstance(InstanceView& view, const Block& block, std::size_t i,
                       std::span<const Color> rho);

// Shortest walk from v through B to each boundary edge's outer endpoint,
// lexicographically smallest among the shortest. One walk per boundary edge.
std::vector<SawWalk> escape_paths(const Instance& instance, const Block& block, Vertex v);
// Lengths only (edges), aligned with block.boundary_edges.
std::vector<std::size_t> escape_lengths(const InstanceView& view, const Block& block, Vertex v);

// Sub-instance marginals p_{i,rho}, row-major over (boundary edge, config).
struct SubMarginals {
  std::size_t num_configs = 0;
  std::vector<double> values;

  double& at(std::size_t i, std::size_t r) { return values[i * num_configs + r]; }
  double at(std::size_t i, std::size_t r) const { return values[i * num_configs + r]; }
};

// Block marginal for every configuration in `configs`, evaluated from the
// supplied sub-instance marginals in log space. Throws InfeasibleError when
// every configuration gets weight zero.
std::vector<double> block_recursion(const PottsParams& params, const Block& block,
                                    const BlockConfigs& configs, const SubMarginals& sub);

// ceil(coeff * ln n), at least 1.
int default_depth(std::size_t n, double coeff = 3.0);

enum class ErrorPrefactor {
  kVertexCount,  // q + n log(1/beta)
  kDegree,       // q + deg(v) log(1/beta)
};

// A-priori error envelope prefactor * sum_{k=L+1}^{theta L} E_delta(v, k),
// theta = max{ceil(log_{1/alpha}((q-1) / (2(1-beta)))), 2}. At beta = 0 the
// prefactor is n log q. alpha is an empirical decay rate in (0, 1).
double error_bound(const Graph& g, Vertex v, std::size_t depth, const PottsParams& params,
                   double alpha, ErrorPrefactor prefactor = ErrorPrefactor::kVertexCount);

}  // namespace potts
