#include "lbs/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lbs/commgame.hpp"
#include "lbs/contractor.hpp"
#include "lbs/errors.hpp"
#include "lbs/graph.hpp"
#include "lbs/io.hpp"
#include "lbs/loadbal.hpp"
#include "lbs/lp.hpp"
#include "lbs/rng.hpp"
#include "lbs/sparsifier.hpp"

namespace lbs::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& xs, char sep = '+') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw InputError("empty entry in list: " + text);
    out.push_back(std::stoi(item));
  }
  return out;
}

// Rows share one fixed column schema; provenance columns come first.
class Report {
 public:
  Report(const ExperimentConfig& config, std::vector<std::string> columns)
      : config_(config), columns_(std::move(columns)) {
    provenance_ = {kToolVersion, config.command,
                   config.seed ? std::to_string(*config.seed) : "",
                   config_hash(config)};
  }

  void add_row(std::vector<std::string> values) {
    if (values.size() != columns_.size())
      throw InputError("report row width mismatch");
    rows_.push_back(std::move(values));
  }

  void write(std::ostream& out) const {
    static const std::vector<std::string> kProvenanceCols = {
        "tool_version", "command", "seed", "config_hash"};
    if (config_.format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& row : rows_) {
        ordered_json obj;
        for (std::size_t i = 0; i < kProvenanceCols.size(); ++i)
          obj[kProvenanceCols[i]] = provenance_[i];
        for (std::size_t i = 0; i < columns_.size(); ++i)
          obj[columns_[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << "\n";
      return;
    }
    for (std::size_t i = 0; i < kProvenanceCols.size(); ++i)
      out << (i ? "," : "") << kProvenanceCols[i];
    for (const auto& col : columns_) out << "," << col;
    out << "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < provenance_.size(); ++i)
        out << (i ? "," : "") << provenance_[i];
      for (const auto& v : row) out << "," << v;
      out << "\n";
    }
  }

 private:
  const ExperimentConfig& config_;
  std::vector<std::string> columns_;
  std::vector<std::string> provenance_;
  std::vector<std::vector<std::string>> rows_;
};

void emit(const ExperimentConfig& config, const Report& report) {
  if (config.out_path == "-") {
    report.write(std::cout);
    return;
  }
  std::ofstream out(config.out_path);
  if (!out) throw InputError("cannot open report file: " + config.out_path);
  report.write(out);
}

const std::string& require(const std::optional<std::string>& v,
                           const char* what) {
  if (!v) throw InputError(std::string("missing required option: ") + what);
  return *v;
}

Rat require_alpha(const ExperimentConfig& c, const Rat& min = Rat(1)) {
  if (!c.alpha) throw InputError("missing required option: --alpha");
  if (*c.alpha < min)
    throw InputError("alpha must be >= " + rat_to_string(min));
  return *c.alpha;
}

std::uint64_t require_seed(const ExperimentConfig& c) {
  if (!c.seed) throw InputError("missing required option: --seed");
  return *c.seed;
}

long long client_budget() {
  const char* env = std::getenv("LBS_MAX_CLIENTS");
  if (!env) return 1 << 20;
  long long v = std::atoll(env);
  if (v < 1) throw InputError("LBS_MAX_CLIENTS must be positive");
  return v;
}

SetFamily parse_family(const std::string& text, int k) {
  SetFamily fam;
  fam.k = k;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    std::uint64_t mask = 0;
    for (int e : parse_int_list(part)) {
      if (e < 1 || e > 2 * k)
        throw InputError("family element " + std::to_string(e) +
                         " outside {1..2k}");
      mask |= std::uint64_t{1} << (e - 1);
    }
    fam.sets.push_back(mask);
  }
  fam.pair_bound = 0;
  for (std::size_t i = 0; i < fam.sets.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      fam.pair_bound = std::max(
          fam.pair_bound, std::popcount(fam.sets[i] & fam.sets[j]));
  fam.check();
  return fam;
}

SetFamily load_family(const ExperimentConfig& config, int k) {
  if (config.family_text) return parse_family(*config.family_text, k);
  if (config.family_file) {
    std::ifstream in(*config.family_file);
    if (!in)
      throw InputError("cannot open family file: " + *config.family_file);
    std::string line, joined;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (!joined.empty()) joined.push_back(';');
      joined += line;
    }
    return parse_family(joined, k);
  }
  throw InputError("missing required option: --family or --family-file");
}

Construction load_witness(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open witness file: " + path);
  return read_witness(in);
}

void save_witness(const std::string& path, const BipartiteGraph& g,
                  const MatchingDecomposition& d) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open witness output: " + path);
  write_witness(out, g, d);
}

std::string fmt_alpha_achieved(const ContractorCertificate& cert) {
  return cert.alpha_achieved ? rat_to_string(*cert.alpha_achieved) : "inf";
}

// ---- command handlers ----

void cmd_optload(const ExperimentConfig& config) {
  BipartiteGraph g = read_graph_file(require(config.graph_path, "--graph"));
  std::vector<int> clients = config.clients_text
                                 ? parse_int_list(*config.clients_text)
                                 : all_clients(g);
  std::optional<int> value = optload(g, clients);
  Report report(config, {"n_left", "n_right", "m", "clients", "feasible",
                         "optload"});
  report.add_row({std::to_string(g.num_clients()),
                  std::to_string(g.num_servers()),
                  std::to_string(g.num_edges()), join_ints(clients),
                  fmt_bool(value.has_value()),
                  value ? std::to_string(*value) : "infeasible"});
  emit(config, report);
}

void add_sparsifier_row(Report& report, const std::string& method,
                        const SparsifierReport& r) {
  report.add_row(
      {method, fmt_bool(r.passes), fmt_bool(r.ratio_bounded),
       r.ratio_bounded ? rat_to_string(r.worst_ratio) : "inf",
       r.witness_clients ? join_ints(*r.witness_clients) : "",
       r.witness_servers ? join_ints(*r.witness_servers) : ""});
}

void cmd_verify_sparsifier(const ExperimentConfig& config) {
  BipartiteGraph g = read_graph_file(require(config.graph_path, "--graph"));
  BipartiteGraph h =
      read_graph_file(require(config.subgraph_path, "--subgraph"));
  Rat alpha = require_alpha(config);
  if (config.method != "def" && config.method != "operational" &&
      config.method != "both")
    throw InputError("method must be def, operational, or both");
  Report report(config, {"method", "passes", "bounded", "worst_ratio",
                         "witness_clients", "witness_servers"});
  if (config.method != "operational")
    add_sparsifier_row(report, "def", is_sparsifier_def(g, h, alpha));
  if (config.method != "def")
    add_sparsifier_row(report, "operational",
                       is_sparsifier_operational(g, h, alpha));
  emit(config, report);
}

void cmd_verify_mc(const ExperimentConfig& config) {
  Construction c = load_witness(require(config.witness_path, "--witness"));
  Rat alpha = config.alpha.value_or(Rat(1));
  VerifyResult v = verify(c.graph, c.decomposition, alpha);
  Report report(config,
                {"matching", "size", "external", "alpha_achieved", "passes"});
  std::string achieved = fmt_alpha_achieved(v.certificate);
  std::string passes = config.alpha ? fmt_bool(v.passes) : "";
  for (std::size_t i = 0; i < v.certificate.per_matching.size(); ++i) {
    const auto& [size, ext] = v.certificate.per_matching[i];
    report.add_row({std::to_string(i), std::to_string(size),
                    std::to_string(ext), achieved, passes});
  }
  emit(config, report);
}

void cmd_construct_mc(const ExperimentConfig& config) {
  if (!config.w || !config.k)
    throw InputError("missing required options: --w and --k");
  SetFamily fam = load_family(config, *config.k);
  Construction c = construct(*config.w, *config.k, fam, client_budget());
  if (config.out_witness)
    save_witness(*config.out_witness, c.graph, c.decomposition);
  VerifyResult v = verify(c.graph, c.decomposition, Rat(1));
  long long bound_max = 0;
  for (int i = 0; i < fam.size(); ++i)
    bound_max = std::max(bound_max, intersection_bound(fam, *config.w, i));
  Report report(config,
                {"w", "k", "t", "n_left", "n_right", "matchings",
                 "labeled_edges", "support_edges", "alpha_achieved",
                 "intersection_bound_max"});
  report.add_row({std::to_string(*config.w), std::to_string(*config.k),
                  std::to_string(fam.size()),
                  std::to_string(c.graph.num_clients()),
                  std::to_string(c.graph.num_servers()),
                  std::to_string(c.decomposition.num_matchings()),
                  std::to_string(c.decomposition.labeled_edge_count()),
                  std::to_string(c.graph.num_edges()),
                  fmt_alpha_achieved(v.certificate),
                  std::to_string(bound_max)});
  emit(config, report);
}

void cmd_gen_family(const ExperimentConfig& config) {
  if (!config.k) throw InputError("missing required option: --k");
  if (!config.delta) throw InputError("missing required option: --delta");
  if (!config.target_t) throw InputError("missing required option: --t");
  SetFamily fam =
      gen_set_family(*config.k, *config.delta, *config.target_t,
                     require_seed(config), config.max_attempts, config.greedy);
  if (config.out_family) {
    std::ofstream out(*config.out_family);
    if (!out)
      throw InputError("cannot open family output: " + *config.out_family);
    for (int i = 0; i < fam.size(); ++i)
      out << join_ints(fam.elements(i), ',') << "\n";
  }
  Report report(config, {"set", "elements", "k", "delta", "target_t",
                         "pair_bound", "greedy"});
  for (int i = 0; i < fam.size(); ++i)
    report.add_row({std::to_string(i), join_ints(fam.elements(i)),
                    std::to_string(fam.k), rat_to_string(*config.delta),
                    std::to_string(*config.target_t),
                    std::to_string(fam.pair_bound), fmt_bool(config.greedy)});
  emit(config, report);
}

std::string fmt_status(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

void cmd_lp_solve(const ExperimentConfig& config) {
  BipartiteGraph g = read_graph_file(require(config.graph_path, "--graph"));
  Rat alpha = require_alpha(config);
  LpSolution primal = solve_primal(g, alpha);
  DualSolution dual = solve_dual(g, alpha);
  Rat max_dual = 0;
  for (const Rat& y : dual.pair_values) max_dual = std::max(max_dual, y);
  bool both = primal.status == LpStatus::optimal &&
              dual.status == LpStatus::optimal;
  Report report(config,
                {"pairs", "primal_status", "primal_objective", "dual_status",
                 "dual_objective", "gap", "max_dual_value",
                 "dual_entries_le_1"});
  report.add_row(
      {std::to_string(dual.pairs.size()), fmt_status(primal.status),
       primal.status == LpStatus::optimal ? rat_to_string(primal.objective)
                                          : "",
       fmt_status(dual.status),
       dual.status == LpStatus::optimal ? rat_to_string(dual.objective) : "",
       both ? rat_to_string(primal.objective - dual.objective) : "",
       rat_to_string(max_dual), fmt_bool(max_dual <= 1)});
  emit(config, report);
}

void cmd_round_primal(const ExperimentConfig& config) {
  BipartiteGraph g = read_graph_file(require(config.graph_path, "--graph"));
  Rat alpha = require_alpha(config, Rat(2));
  std::uint64_t seed = require_seed(config);
  LpSolution sol = solve_primal(g, alpha / 2);
  if (sol.status != LpStatus::optimal)
    throw InputError("LP(G, alpha/2) is not solvable: " +
                     fmt_status(sol.status));
  double bound =
      20.0 * std::log(static_cast<double>(g.num_clients())) *
      rat_to_double(sol.objective);
  Report report(config, {"trial", "kept_edges", "size_bound", "within_bound",
                         "passes_operational"});
  for (int trial = 0; trial < config.trials; ++trial) {
    std::uint64_t sub = rng::substream(seed, trial)();
    BipartiteGraph h = round_primal(g, alpha, sol, sub);
    bool within = h.num_edges() <= bound;
    bool passes = is_sparsifier_operational(g, h, alpha).passes;
    report.add_row({std::to_string(trial), std::to_string(h.num_edges()),
                    fmt_double(bound), fmt_bool(within), fmt_bool(passes)});
  }
  emit(config, report);
}

void cmd_round_dual(const ExperimentConfig& config) {
  BipartiteGraph g = read_graph_file(require(config.graph_path, "--graph"));
  Rat alpha = require_alpha(config, Rat(2));
  std::uint64_t seed = require_seed(config);
  DualSolution sol = solve_dual(g, alpha);
  if (sol.status != LpStatus::optimal)
    throw InputError("dual LP is not solvable: " + fmt_status(sol.status));
  Report report(config,
                {"trial", "lp_objective", "sampled_pairs", "good_matchings",
                 "edges", "candidate_edges", "overloaded_edges",
                 "verifies_alpha"});
  for (int trial = 0; trial < config.trials; ++trial) {
    std::uint64_t sub = rng::substream(seed, trial)();
    DualRounding r = round_dual(g, alpha, sol, sub);
    bool ok = r.graph.num_edges() == 0 ||
              verify(r.graph, r.decomposition, alpha).passes;
    report.add_row({std::to_string(trial), rat_to_string(sol.objective),
                    std::to_string(r.sampled_pairs),
                    std::to_string(r.good_matchings),
                    std::to_string(r.graph.num_edges()),
                    std::to_string(r.candidate_edges),
                    std::to_string(r.overloaded_edges), fmt_bool(ok)});
  }
  emit(config, report);
}

void cmd_brittleness(const ExperimentConfig& config) {
  Construction c = load_witness(require(config.witness_path, "--witness"));
  Rat alpha = require_alpha(config);
  std::vector<int> indices;
  if (config.matching_index) {
    indices.push_back(*config.matching_index);
  } else {
    for (int i = 0; i < c.decomposition.num_matchings(); ++i)
      indices.push_back(i);
  }
  Report report(config, {"matching", "size", "removed", "h_edges", "nh_size",
                         "operational_fails"});
  for (int i : indices) {
    BrittlenessWitness w =
        brittleness_witness(c.graph, c.decomposition, alpha, i);
    int nh = static_cast<int>(neighborhood(w.h, w.clients).size());
    bool fails = true;
    if (c.graph.num_clients() <= 20)
      fails = !is_sparsifier_operational(c.graph, w.h, alpha).passes;
    report.add_row({std::to_string(i),
                    std::to_string(c.decomposition.matchings[i].size()),
                    std::to_string(static_cast<int>(w.clients.size())),
                    std::to_string(w.h.num_edges()), std::to_string(nh),
                    fmt_bool(fails)});
  }
  emit(config, report);
}

void cmd_hard_dist(const ExperimentConfig& config) {
  Construction c = load_witness(require(config.witness_path, "--witness"));
  Rat alpha = require_alpha(config);
  std::uint64_t seed = require_seed(config);
  Report report(config,
                {"trial", "k_matchings", "r0", "index", "bits_total",
                 "bits_ones", "reverifies_2alpha", "bob_size",
                 "combined_servers"});
  for (int trial = 0; trial < config.trials; ++trial) {
    std::uint64_t sub = rng::substream(seed, trial)();
    EncodedInstance inst =
        sample_hard_instance(c.graph, c.decomposition, alpha, sub);
    long long ones = 0;
    for (std::uint8_t b : inst.bits) ones += b;
    bool reverifies =
        verify(inst.alice_graph, inst.alice_decomp, 2 * alpha).passes;
    int r0 = inst.base_decomp.matchings[0].size();
    for (const Matching& m : inst.base_decomp.matchings)
      r0 = std::min(r0, m.size());
    report.add_row({std::to_string(trial),
                    std::to_string(inst.base_decomp.num_matchings()),
                    std::to_string(r0),
                    std::to_string(inst.matching_index),
                    std::to_string(inst.bits.size()), std::to_string(ones),
                    fmt_bool(reverifies),
                    std::to_string(inst.bob_matching.size()),
                    std::to_string(inst.combined.num_servers())});
  }
  emit(config, report);
}

SparsifyStrategy make_strategy(const ExperimentConfig& config,
                               const Rat& alpha, std::uint64_t trial_seed) {
  if (config.strategy == "identity")
    return [](const BipartiteGraph& g) { return g; };
  if (config.strategy == "empty")
    return [](const BipartiteGraph& g) {
      return BipartiteGraph(g.num_clients(), g.num_servers(), {});
    };
  if (config.strategy == "prand") {
    double keep = config.strategy_p;
    return [keep, trial_seed](const BipartiteGraph& g) {
      std::mt19937_64 gen = rng::engine(trial_seed);
      std::vector<Edge> kept;
      for (const Edge& e : g.edges())
        if (rng::uniform01(gen) < keep) kept.push_back(e);
      return BipartiteGraph(g.num_clients(), g.num_servers(),
                            std::move(kept));
    };
  }
  if (config.strategy == "round-primal") {
    if (alpha < 2) throw InputError("round-primal strategy needs alpha >= 2");
    return [alpha, trial_seed](const BipartiteGraph& g) {
      if (g.num_clients() < 2 || g.num_edges() == 0) return g;
      LpSolution sol = solve_primal(g, alpha / 2);
      if (sol.status != LpStatus::optimal) return g;
      return round_primal(g, alpha, sol, trial_seed);
    };
  }
  if (config.strategy == "minimal") {
    return [alpha](const BipartiteGraph& g) {
      if (g.num_edges() > 14)
        throw InputError("minimal strategy is capped at 14 edges");
      int m = g.num_edges();
      for (int size = 0; size <= m; ++size) {
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
          if (std::popcount(mask) != size) continue;
          std::vector<Edge> kept;
          for (int e = 0; e < m; ++e)
            if (mask >> e & 1) kept.push_back(g.edges()[e]);
          BipartiteGraph h(g.num_clients(), g.num_servers(),
                           std::move(kept));
          if (is_sparsifier_operational(g, h, alpha).passes) return h;
        }
      }
      return g;
    };
  }
  throw InputError("unknown strategy: " + config.strategy);
}

void cmd_protocol(const ExperimentConfig& config) {
  Rat alpha = require_alpha(config);
  std::uint64_t seed = require_seed(config);
  Report report(config,
                {"trial", "mode", "strategy", "alice_edges", "bob_edges",
                 "message_edges", "message_bits", "verified_sparsifier",
                 "maxload", "optload", "ratio", "within_alpha_plus_1"});
  std::optional<BipartiteGraph> g;
  std::optional<Construction> witness;
  if (config.mode == "random") {
    g = read_graph_file(require(config.graph_path, "--graph"));
  } else if (config.mode == "adversarial") {
    witness = load_witness(require(config.witness_path, "--witness"));
  } else {
    throw InputError("mode must be random or adversarial");
  }

  for (int trial = 0; trial < config.trials; ++trial) {
    // Even substream partitions (or samples the instance); odd substream
    // drives the strategy's randomness.
    std::uint64_t part_seed = rng::substream(seed, 2 * trial)();
    std::uint64_t strat_seed = rng::substream(seed, 2 * trial + 1)();
    BipartiteGraph ga, gb;
    if (config.mode == "random") {
      std::tie(ga, gb) = partition_edges(*g, config.p, part_seed);
    } else {
      EncodedInstance inst = sample_hard_instance(
          witness->graph, witness->decomposition, alpha, part_seed);
      std::tie(ga, gb) = partition_edges(inst);
    }
    SparsifyStrategy strategy = make_strategy(config, alpha, strat_seed);
    BipartiteGraph message = strategy(ga);
    // Blank when Alice's side exceeds the exhaustive-check cap.
    std::string verified;
    if (ga.num_clients() <= 20)
      verified =
          fmt_bool(is_sparsifier_operational(ga, message, alpha).passes);
    ProtocolOutcome outcome = run_protocol(ga, gb, strategy, alpha);
    BipartiteGraph full = BipartiteGraph::union_of(ga, gb);
    int opt = *optload(full, all_clients(full));
    report.add_row(
        {std::to_string(trial), config.mode, config.strategy,
         std::to_string(ga.num_edges()), std::to_string(gb.num_edges()),
         std::to_string(message.num_edges()),
         std::to_string(outcome.message_bits), verified,
         std::to_string(max_load(outcome.assignment)), std::to_string(opt),
         rat_to_string(outcome.ratio),
         fmt_bool(outcome.ratio <= alpha + 1)});
  }
  emit(config, report);
}

void cmd_rs_convert(const ExperimentConfig& config) {
  Construction c = load_witness(require(config.witness_path, "--witness"));
  Rat alpha = require_alpha(config);
  Construction rs = to_rs_graph(c.graph, c.decomposition, alpha);
  if (config.out_witness)
    save_witness(*config.out_witness, rs.graph, rs.decomposition);
  bool induced = matchings_induced(rs.graph, rs.decomposition);
  bool pow2 = true;
  int class_size = rs.decomposition.num_matchings()
                       ? rs.decomposition.matchings[0].size()
                       : 0;
  for (const Matching& m : rs.decomposition.matchings)
    pow2 = pow2 && m.size() == class_size &&
           std::has_single_bit(static_cast<unsigned>(m.size()));
  Report report(config,
                {"matchings_in", "matchings_out", "class_size", "edges_out",
                 "induced", "uniform_power_of_two"});
  report.add_row({std::to_string(c.decomposition.num_matchings()),
                  std::to_string(rs.decomposition.num_matchings()),
                  std::to_string(class_size),
                  std::to_string(rs.graph.num_edges()), fmt_bool(induced),
                  fmt_bool(pow2)});
  emit(config, report);
}

void cmd_reduce_servers(const ExperimentConfig& config) {
  BipartiteGraph g = read_graph_file(require(config.graph_path, "--graph"));
  ServerReduction r = reduce_servers(g);
  if (config.out_graph) write_graph_file(*config.out_graph, r.graph);
  int max_degree = 0;
  for (int c = 0; c < r.graph.num_clients(); ++c)
    max_degree = std::max(max_degree, r.graph.degree(c));
  Report report(config, {"n_left", "servers_in", "servers_out", "edges_in",
                         "edges_out", "max_degree_out"});
  report.add_row({std::to_string(g.num_clients()),
                  std::to_string(g.num_servers()),
                  std::to_string(r.graph.num_servers()),
                  std::to_string(g.num_edges()),
                  std::to_string(r.graph.num_edges()),
                  std::to_string(max_degree)});
  emit(config, report);
}

}  // namespace

std::string config_hash(const ExperimentConfig& c) {
  std::ostringstream canon;
  canon << "command=" << c.command << "\n";
  canon << "seed=" << (c.seed ? std::to_string(*c.seed) : "") << "\n";
  canon << "alpha=" << (c.alpha ? rat_to_string(*c.alpha) : "") << "\n";
  canon << "delta=" << (c.delta ? rat_to_string(*c.delta) : "") << "\n";
  auto opt_int = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : "";
  };
  canon << "w=" << opt_int(c.w) << "\nk=" << opt_int(c.k)
        << "\nt=" << opt_int(c.target_t)
        << "\nmatching=" << opt_int(c.matching_index)
        << "\ntrials=" << c.trials << "\np=" << fmt_double(c.p)
        << "\nstrategy_p=" << fmt_double(c.strategy_p)
        << "\nmax_attempts=" << c.max_attempts
        << "\ngreedy=" << fmt_bool(c.greedy);
  auto opt_str = [](const std::optional<std::string>& v) {
    return v ? *v : "";
  };
  canon << "\ngraph=" << opt_str(c.graph_path)
        << "\nsubgraph=" << opt_str(c.subgraph_path)
        << "\nwitness=" << opt_str(c.witness_path)
        << "\nfamily=" << opt_str(c.family_text)
        << "\nfamily_file=" << opt_str(c.family_file)
        << "\nclients=" << opt_str(c.clients_text)
        << "\nout_witness=" << opt_str(c.out_witness)
        << "\nout_graph=" << opt_str(c.out_graph)
        << "\nout_family=" << opt_str(c.out_family)
        << "\nmethod=" << c.method << "\nstrategy=" << c.strategy
        << "\nmode=" << c.mode << "\nformat=" << c.format << "\n";
  std::string s = canon.str();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

int run(const ExperimentConfig& config) {
  try {
    if (config.format != "csv" && config.format != "json")
      throw InputError("format must be csv or json");
    if (config.trials < 1) throw InputError("trials must be >= 1");
    if (config.command == "optload") {
      cmd_optload(config);
    } else if (config.command == "verify-sparsifier") {
      cmd_verify_sparsifier(config);
    } else if (config.command == "verify-mc") {
      cmd_verify_mc(config);
    } else if (config.command == "construct-mc") {
      cmd_construct_mc(config);
    } else if (config.command == "gen-family") {
      cmd_gen_family(config);
    } else if (config.command == "lp-solve") {
      cmd_lp_solve(config);
    } else if (config.command == "round-primal") {
      cmd_round_primal(config);
    } else if (config.command == "round-dual") {
      cmd_round_dual(config);
    } else if (config.command == "brittleness") {
      cmd_brittleness(config);
    } else if (config.command == "hard-dist") {
      cmd_hard_dist(config);
    } else if (config.command == "protocol") {
      cmd_protocol(config);
    } else if (config.command == "rs-convert") {
      cmd_rs_convert(config);
    } else if (config.command == "reduce-servers") {
      cmd_reduce_servers(config);
    } else {
      throw InputError("unknown command: " + config.command);
    }
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "error[parse]: " << e.what() << "\n";
    return kParseError;
  } catch (const FamilyGenError& e) {
    std::cerr << "error[generation]: " << e.what() << "\n";
    return kGenerationError;
  } catch (const InputError& e) {
    std::cerr << "error[input]: " << e.what() << "\n";
    return kInputError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error[io]: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace lbs::cli
