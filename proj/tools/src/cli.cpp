#include "potts/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "potts/blocks.hpp"
#include "potts/counting.hpp"
#include "potts/decay.hpp"
#include "potts/errors.hpp"
#include "potts/exact.hpp"
#include "potts/generators.hpp"
#include "potts/instance_file.hpp"
#include "potts/randstats.hpp"
#include "potts/sampling.hpp"
#include "potts/saw.hpp"

namespace potts::cli {

namespace {

using json = nlohmann::ordered_json;

// 12 significant digits; non-finite values become null.
json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json numbers(std::span<const double> xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

json colors_json(std::span<const Color> colors) {
  json out = json::array();
  for (Color c : colors) out.push_back(c + 1);
  return out;
}

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json diagnostics_json(const MargDiagnostics& d) {
  return {{"recursive_calls", d.recursive_calls},
          {"shared_calls", d.shared_calls},
          {"termination_events", d.termination_events},
          {"max_block_size", d.max_block_size},
          {"max_f_size", d.max_f_size},
          {"infeasible_base_case", d.infeasible_base_case}};
}

struct Flags {
  std::optional<int> q;
  std::string beta = "0";
  std::string instance;
  std::optional<int> depth;
  std::optional<double> depth_coeff;
  std::optional<double> eps;
  std::optional<Vertex> vertex;
  bool all_marginals = false;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> order_seed;
  std::size_t samples = 1;
  std::optional<std::size_t> threads;
  std::size_t l_max = 8;
  std::string mode = "exhaustive";
  std::size_t trials = 10'000;
  std::size_t path_budget = 2'000'000;
  std::size_t n = 0;
  double d = 0.0;
  double delta = 0.0;
  std::string family;
  std::size_t k = 0;
  std::optional<double> constant_delta;
  std::string format = "json";
  std::uint64_t budget = exact::kDefaultBudget;
  std::uint64_t extension_budget = 100'000'000;
  std::optional<long> time_limit_ms;
  std::size_t max_block_size = 64;
  std::size_t max_block_configs = 1'000'000;
  bool no_share = false;
};

PottsParams params_from(const Flags& f) {
  if (!f.q) throw ArgumentError("--q is required");
  return PottsParams(*f.q, Rational::parse_decimal(f.beta));
}

Instance instance_from(const Flags& f) {
  if (f.instance.empty()) throw ArgumentError("--instance is required");
  const PottsParams params = params_from(f);
  InstanceFile file = load_instance(f.instance, params.q());
  Pinning pins(file.graph.num_vertices());
  for (const auto& p : file.pins) pins.pin(p.vertex, p.color);
  return Instance(std::move(file.graph), params, std::move(pins));
}

Graph generated_graph(const Flags& f) {
  const auto& fam = f.family;
  if (fam == "path") return gen::path(f.n);
  if (fam == "cycle") return gen::cycle(f.n);
  if (fam == "complete") return gen::complete(f.n);
  if (fam == "star") return gen::star(f.k);
  if (fam == "caterpillar") return gen::caterpillar(f.n, f.k);
  if (fam == "gnp") return gen::gnp(f.n, f.d, f.seed);
  throw ArgumentError("unknown family '" + fam + "'");
}

// Graph from --instance, or from the generator flags when --family is set.
Graph graph_from(const Flags& f) {
  if (!f.family.empty()) {
    if (!f.instance.empty()) throw ArgumentError("--family and --instance are mutually exclusive");
    return generated_graph(f);
  }
  if (f.instance.empty()) throw ArgumentError("--instance or --family is required");
  return load_instance(f.instance).graph;
}

int resolve_depth(const Flags& f, std::size_t n) {
  if (f.depth) {
    if (*f.depth < 0) throw ArgumentError("--depth must be non-negative");
    return *f.depth;
  }
  const double coeff = f.depth_coeff.value_or(3.0);
  if (f.eps) return depth_for_accuracy(n, *f.eps, coeff);
  return default_depth(n, coeff);
}

MargOptions marg_options(const Flags& f) {
  MargOptions o;
  o.max_block_size = f.max_block_size;
  o.max_block_configs = f.max_block_configs;
  o.share_subresults = !f.no_share;
  if (f.time_limit_ms) o.time_limit = std::chrono::milliseconds(*f.time_limit_ms);
  return o;
}

std::size_t thread_count(const Flags& f) {
  if (f.threads) {
    if (*f.threads == 0) throw ArgumentError("--threads must be positive");
    return *f.threads;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json params_json(const Flags& f) { return {{"q", *f.q}, {"beta", f.beta}}; }

void cmd_gen(const Flags& f, std::ostream& out) {
  if (f.family.empty()) throw ArgumentError("--family is required");
  out << serialize_instance(generated_graph(f));
}

void cmd_exact(const Flags& f, std::ostream& out) {
  const Instance inst = instance_from(f);
  const double log_z = exact::log_partition(inst, f.budget);
  const bool feasible = std::isfinite(log_z);

  std::vector<Vertex> rows;
  if (f.vertex) {
    if (*f.vertex >= inst.num_vertices()) throw ArgumentError("--vertex out of range");
    rows.push_back(*f.vertex);
  } else if (f.all_marginals) {
    for (Vertex v = 0; v < inst.num_vertices(); ++v) rows.push_back(v);
  }
  if (!rows.empty() && !feasible) throw InfeasibleError("instance is infeasible");
  std::vector<std::vector<double>> table;
  for (Vertex v : rows) table.push_back(exact::marginals(inst, v, f.budget));

  if (f.format == "tsv") {
    out << "z\t" << fmt12(feasible ? std::exp(log_z) : 0.0) << '\n';
    out << "log_z\t" << (feasible ? fmt12(log_z) : "-inf") << '\n';
    if (!rows.empty()) {
      out << "vertex";
      for (int c = 1; c <= inst.params.q(); ++c) out << "\tc" << c;
      out << '\n';
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << rows[r];
        for (double p : table[r]) out << '\t' << fmt12(p);
        out << '\n';
      }
    }
    return;
  }
  json j = params_json(f);
  j["n"] = inst.num_vertices();
  j["feasible"] = feasible;
  j["z"] = number(feasible ? std::exp(log_z) : 0.0);
  j["log_z"] = feasible ? number(log_z) : json(nullptr);
  if (!rows.empty()) {
    json m = json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      m.push_back({{"vertex", rows[r]}, {"probabilities", numbers(table[r])}});
    }
    j["marginals"] = std::move(m);
  }
  print_json(out, j);
}

void cmd_marginal(const Flags& f, std::ostream& out) {
  const Instance inst = instance_from(f);
  if (!f.vertex) throw ArgumentError("--vertex is required");
  if (*f.vertex >= inst.num_vertices()) throw ArgumentError("--vertex out of range");
  const int depth = resolve_depth(f, inst.num_vertices());
  const auto dist = marginal_distribution(inst, *f.vertex, depth, marg_options(f));
  std::vector<double> raw;
  for (double p : dist.probabilities) raw.push_back(p * dist.raw_sum);
  json j = params_json(f);
  j["vertex"] = *f.vertex;
  j["depth"] = depth;
  j["marginals"] = numbers(dist.probabilities);
  j["raw_sum"] = number(dist.raw_sum);
  j["diagnostics"] = diagnostics_json(dist.diagnostics);
  print_json(out, j);
}

void cmd_partition(const Flags& f, std::ostream& out) {
  const Instance inst = instance_from(f);
  const int depth = resolve_depth(f, inst.num_vertices());
  PartitionOptions opts;
  opts.marg = marg_options(f);
  opts.order_seed = f.order_seed;
  const auto est = estimate_partition(inst, depth, opts);
  json j = params_json(f);
  j["log_z"] = number(est.log_z);
  j["z"] = number(std::exp(est.log_z));
  j["depth"] = depth;
  j["anchor_weight_log"] = number(est.anchor_log_weight);
  j["anchor"] = colors_json(est.anchor);
  j["diagnostics"] = diagnostics_json(est.diagnostics);
  print_json(out, j);
}

void cmd_sample(const Flags& f, std::ostream& out) {
  const Instance inst = instance_from(f);
  const int depth = resolve_depth(f, inst.num_vertices());
  const std::size_t threads = thread_count(f);
  const auto batch = sample_batch(inst, depth, f.seed, f.samples, marg_options(f), threads);
  for (const auto& config : batch.configurations) {
    for (std::size_t v = 0; v < config.size(); ++v) {
      if (v > 0) out << ' ';
      out << config[v] + 1;
    }
    out << '\n';
  }
  json footer = params_json(f);
  footer["samples"] = f.samples;
  footer["seed"] = f.seed;
  footer["depth"] = depth;
  footer["threads"] = threads;
  footer["log_proposal"] = numbers(batch.log_proposal);
  footer["diagnostics"] = diagnostics_json(batch.diagnostics);
  out << footer.dump() << '\n';
}

void cmd_verify_contraction(const Flags& f, std::ostream& out) {
  const Graph g = graph_from(f);
  DegreeWeight weight;
  json j;
  if (f.constant_delta) {
    weight = constant_weight(*f.constant_delta);
    j["constant_delta"] = number(*f.constant_delta);
  } else {
    weight = potts_delta(params_from(f));
    j = params_json(f);
  }
  const auto report = verify_contraction(g, f.l_max, weight, f.extension_budget);
  j["l"] = report.lengths;
  j["max_e_delta"] = numbers(report.max_e_delta);
  j["argmax"] = report.argmax;
  j["gamma"] = number(report.gamma);
  j["fit_from"] = report.fit_from;
  j["fit_to"] = report.fit_to;
  j["contracting"] = report.contracting;
  j["budget_exhausted"] = report.budget_exhausted;
  j["walk_extensions"] = report.walk_extensions;
  j["warnings"] = report.warnings;
  print_json(out, j);
}

json sparse_json(const SparseReport& r) {
  return {{"l_max", r.l_max},
          {"worst_ratio", number(r.worst_ratio)},
          {"worst_path", r.worst_path},
          {"worst_block_size", r.worst_block_size},
          {"paths_tested", r.paths_tested},
          {"mode", to_string(r.mode)}};
}

void cmd_verify_sparse(const Flags& f, std::ostream& out) {
  const Graph g = graph_from(f);
  const PottsParams params = params_from(f);
  SparseOptions opts;
  if (f.mode == "exhaustive") {
    opts.mode = SparseMode::kExhaustive;
  } else if (f.mode == "sampled") {
    opts.mode = SparseMode::kSampled;
  } else {
    throw ArgumentError("--mode must be exhaustive or sampled");
  }
  opts.trials = f.trials;
  opts.seed = f.seed;
  opts.path_budget = f.path_budget;
  json j = params_json(f);
  j.update(sparse_json(verify_locally_sparse(g, params, f.l_max, opts)));
  print_json(out, j);
}

void cmd_verify_gnp(const Flags& f, std::ostream& out) {
  const PottsParams params = params_from(f);
  const auto r = verify_gnp_properties(f.n, f.d, params, f.seed, f.l_max, f.trials);
  json j = params_json(f);
  j["n"] = r.n;
  j["d"] = number(r.d);
  j["seed"] = r.seed;
  j["num_edges"] = r.num_edges;
  j["max_degree"] = r.max_degree;
  j["contraction"] = {{"l", r.contraction.lengths},
                      {"max_e_delta", numbers(r.contraction.max_e_delta)},
                      {"gamma", number(r.contraction.gamma)},
                      {"contracting", r.contraction.contracting},
                      {"budget_exhausted", r.contraction.budget_exhausted}};
  j["sparse"] = sparse_json(r.sparse);
  j["colorable"] = r.colorable ? json(*r.colorable) : json(nullptr);
  j["passed"] = r.passed;
  j["notes"] = r.notes;
  print_json(out, j);
}

void cmd_expected_contraction(const Flags& f, std::ostream& out) {
  const PottsParams params = params_from(f);
  const double value = expected_contraction(f.n, f.delta, params);
  json j = params_json(f);
  j["n"] = f.n;
  j["delta"] = number(f.delta);
  j["value"] = number(value);
  j["inverse_delta"] = number(1.0 / f.delta);
  j["below_inverse_delta"] = value < 1.0 / f.delta;
  print_json(out, j);
}

struct Command {
  CLI::App* app;
  std::function<void(const Flags&, std::ostream&)> handler;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--q", f.q, "Number of colors");
  cmd->add_option("--beta", f.beta, "Edge interaction in [0, 1), decimal")->capture_default_str();
}

void add_instance_flag(CLI::App* cmd, Flags& f) {
  cmd->add_option("--instance,--instance-file", f.instance, "Instance file")->check(CLI::ExistingFile);
}

void add_depth_flags(CLI::App* cmd, Flags& f, bool with_eps) {
  auto* depth = cmd->add_option("--depth", f.depth, "Recursion depth L");
  auto* coeff = cmd->add_option("--depth-coeff", f.depth_coeff, "L = ceil(c ln n), default c = 3");
  depth->excludes(coeff);
  if (with_eps) {
    auto* eps = cmd->add_option("--eps", f.eps, "L = ceil(c (ln n + ln 1/eps))");
    eps->excludes(depth);
  }
}

void add_recursion_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--time-limit-ms", f.time_limit_ms, "Wall-clock limit per marginal call");
  cmd->add_option("--max-block-size", f.max_block_size)->capture_default_str();
  cmd->add_option("--max-block-configs", f.max_block_configs)->capture_default_str();
  cmd->add_flag("--no-share", f.no_share, "Disable sibling sub-result sharing");
}

void add_generator_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--family", f.family, "path|cycle|complete|star|caterpillar|gnp");
  cmd->add_option("--n", f.n, "Vertex count (spine length for caterpillar)");
  cmd->add_option("--k", f.k, "Leaves of a star, bristles per caterpillar spine vertex");
  cmd->add_option("--d", f.d, "Average degree for gnp");
  cmd->add_option("--seed", f.seed, "Generator seed")->capture_default_str();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation-decay marginals and partition functions for the Potts model", "potts"};
  app.require_subcommand(1);
  Flags f;
  std::vector<Command> commands;

  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph in instance format");
  add_generator_flags(gen_cmd, f);
  commands.push_back({gen_cmd, cmd_gen});

  auto* exact_cmd = app.add_subcommand("exact", "Exact partition function and marginals");
  add_model_flags(exact_cmd, f);
  add_instance_flag(exact_cmd, f);
  exact_cmd->add_option("--vertex", f.vertex, "Report the marginal of this vertex");
  exact_cmd->add_flag("--marginals", f.all_marginals, "Report every vertex's marginal");
  exact_cmd->add_option("--format", f.format, "json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  exact_cmd->add_option("--budget", f.budget, "Enumeration budget")->capture_default_str();
  commands.push_back({exact_cmd, cmd_exact});

  auto* marginal_cmd = app.add_subcommand("marginal", "Truncated recursion marginal estimate");
  add_model_flags(marginal_cmd, f);
  add_instance_flag(marginal_cmd, f);
  add_depth_flags(marginal_cmd, f, false);
  add_recursion_flags(marginal_cmd, f);
  marginal_cmd->add_option("--vertex", f.vertex, "Vertex id")->required();
  commands.push_back({marginal_cmd, cmd_marginal});

  auto* partition_cmd = app.add_subcommand("partition", "Telescoping partition function estimate");
  add_model_flags(partition_cmd, f);
  add_instance_flag(partition_cmd, f);
  add_depth_flags(partition_cmd, f, true);
  add_recursion_flags(partition_cmd, f);
  partition_cmd->add_option("--order-seed", f.order_seed, "Shuffle the elimination order");
  commands.push_back({partition_cmd, cmd_partition});

  auto* sample_cmd = app.add_subcommand("sample", "Sequential conditional sampler");
  add_model_flags(sample_cmd, f);
  add_instance_flag(sample_cmd, f);
  add_depth_flags(sample_cmd, f, false);
  add_recursion_flags(sample_cmd, f);
  sample_cmd->add_option("--samples", f.samples)->capture_default_str();
  sample_cmd->add_option("--seed", f.seed)->capture_default_str();
  sample_cmd->add_option("--threads", f.threads, "Worker threads, default all cores");
  commands.push_back({sample_cmd, cmd_sample});

  auto* contraction_cmd = app.add_subcommand("verify-contraction", "Empirical SAW contraction");
  add_model_flags(contraction_cmd, f);
  add_instance_flag(contraction_cmd, f);
  add_generator_flags(contraction_cmd, f);
  contraction_cmd->add_option("--l-max", f.l_max)->capture_default_str();
  contraction_cmd->add_option("--constant-delta", f.constant_delta, "Use delta(d) = c");
  contraction_cmd->add_option("--budget", f.extension_budget, "Walk extension budget")
      ->capture_default_str();
  commands.push_back({contraction_cmd, cmd_verify_contraction});

  auto* sparse_cmd = app.add_subcommand("verify-sparse", "Empirical locally-sparse constant");
  add_model_flags(sparse_cmd, f);
  add_instance_flag(sparse_cmd, f);
  add_generator_flags(sparse_cmd, f);
  sparse_cmd->add_option("--l-max", f.l_max)->capture_default_str();
  sparse_cmd->add_option("--mode", f.mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}))
      ->capture_default_str();
  sparse_cmd->add_option("--trials", f.trials)->capture_default_str();
  sparse_cmd->add_option("--path-budget", f.path_budget)->capture_default_str();
  commands.push_back({sparse_cmd, cmd_verify_sparse});

  auto* gnp_cmd = app.add_subcommand("verify-gnp", "Random graph property report");
  add_model_flags(gnp_cmd, f);
  gnp_cmd->add_option("--n", f.n)->required();
  gnp_cmd->add_option("--d", f.d)->required();
  gnp_cmd->add_option("--seed", f.seed)->capture_default_str();
  gnp_cmd->add_option("--l-max", f.l_max)->capture_default_str();
  gnp_cmd->add_option("--trials", f.trials, "Sampled sparse-check trials")->capture_default_str();
  commands.push_back({gnp_cmd, cmd_verify_gnp});

  auto* expected_cmd = app.add_subcommand("expected-contraction", "E[delta(Bin(n, Delta/n))]");
  add_model_flags(expected_cmd, f);
  expected_cmd->add_option("--n", f.n)->required();
  expected_cmd->add_option("--delta", f.delta, "Delta")->required();
  commands.push_back({expected_cmd, cmd_expected_contraction});

  std::vector<const char*> argv{"potts"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  for (const auto& c : commands) {
    if (c.app->parsed()) {
      c.handler(f, out);
      return kOk;
    }
  }
  throw InvariantError("no subcommand dispatched");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace potts::cli
