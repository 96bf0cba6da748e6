#include "potts/randstats.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "potts/counting.hpp"
#include "potts/errors.hpp"
#include "potts/generators.hpp"
#include "potts/rng.hpp"

namespace potts {

double expected_contraction(std::size_t n, double Delta, const PottsParams& params) {
  if (n < 1) throw ArgumentError("expected_contraction requires n >= 1");
  const double nd = static_cast<double>(n);
  if (!(Delta > 0.0 && Delta <= nd)) throw ArgumentError("expected_contraction requires 0 < Delta <= n");
  const double p = Delta / nd;
  if (p == 1.0) return delta(params, n);

  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  const double log_n_fact = std::lgamma(nd + 1.0);
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double log_term = log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
                            kd * log_p + (nd - kd) * log_1mp;
    sum += delta(params, k) * std::exp(log_term);
  }
  return sum;
}

ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw ArgumentError("wilson_interval requires trials > 0");
  if (successes > trials) throw ArgumentError("successes exceed trials");
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

GrowthProcessReport simulate_block_growth(std::size_t L, std::size_t n, double d, int q,
                                          std::size_t t_max, std::size_t trials,
                                          std::uint64_t seed) {
  if (n < 1 || t_max < 1 || trials < 1) throw ArgumentError("n, t_max and trials must be positive");
  if (!(d >= 0.0 && d <= static_cast<double>(n))) throw ArgumentError("d must lie in [0, n]");
  if (q < 6) throw ArgumentError("simulate_block_growth requires q >= 6");

  GrowthProcessReport report;
  report.initial_active = L;
  report.n = n;
  report.d = d;
  report.q = q;
  report.trials = trials;
  report.seed = seed;

  std::vector<std::uint64_t> tail(t_max, 0);
  std::vector<std::uint64_t> alive(t_max, 0);
  for (std::size_t k = 0; k < trials; ++k) {
    std::mt19937_64 gen(counter_hash(seed, k));
    std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(n),
                                                   d / static_cast<double>(n));
    auto y = static_cast<std::int64_t>(L);
    bool hit_zero = false;
    for (std::size_t t = 1; t <= t_max; ++t) {
      std::int64_t x = draw(gen);
      // Censored for t > L: x counts only when x >= (q-5)/2.
      if (t > L && 2 * x < q - 5) x = 0;
      y += x - 1;
      if (y == 0) hit_zero = true;
      if (y >= 0) ++tail[t - 1];
      if (!hit_zero) ++alive[t - 1];
    }
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t t = 1; t <= t_max; ++t) {
    report.t_values.push_back(t);
    report.tail.push_back(wilson_interval(tail[t - 1], trials));
    report.survival.push_back(wilson_interval(alive[t - 1], trials));
    if (t > L && report.tail.back().estimate > 0.0) {
      xs.push_back(static_cast<double>(t));
      ys.push_back(std::log(report.tail.back().estimate));
    }
  }
  if (xs.size() >= 2) {
    const double m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    report.log_tail_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return report;
}

GnpReport verify_gnp_properties(std::size_t n, double d, const PottsParams& params,
                                std::uint64_t seed, std::size_t l_max, std::size_t sparse_trials) {
  const Graph g = gen::gnp(n, d, seed);
  GnpReport report;
  report.n = n;
  report.d = d;
  report.q = params.q();
  report.beta = params.beta_exact();
  report.seed = seed;
  report.num_edges = g.num_edges();
  report.max_degree = g.max_degree();

  report.contraction = verify_contraction(g, l_max, potts_delta(params));
  for (const auto& w : report.contraction.warnings) report.notes.push_back("contraction: " + w);

  SparseOptions sparse;
  sparse.mode = SparseMode::kSampled;
  sparse.trials = sparse_trials;
  sparse.seed = seed;
  report.sparse = verify_locally_sparse(g, params, l_max, sparse);

  if (params.is_coloring()) {
    try {
      find_feasible_config(Instance(g, params));
      report.colorable = true;
    } catch (const InfeasibleError& e) {
      report.colorable = false;
      report.notes.push_back(std::string("colorability: ") + e.what());
    } catch (const BudgetError& e) {
      report.colorable = false;
      report.notes.push_back(std::string("colorability: ") + e.what());
    }
  }
  report.passed = report.contraction.contracting && report.colorable.value_or(true);
  return report;
}

}  // namespace potts
