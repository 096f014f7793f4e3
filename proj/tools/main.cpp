#include <CLI11.hpp>

#include "lbs/cli.hpp"

namespace {

using lbs::cli::ExperimentConfig;

void add_common(CLI::App* cmd, ExperimentConfig& config) {
  cmd->add_option("--format", config.format, "Report format: csv or json");
  cmd->add_option("--out", config.out_path,
                  "Report path ('-' for stdout)");
}

void add_seed(CLI::App* cmd, ExperimentConfig& config) {
  cmd->add_option("--seed", config.seed, "64-bit RNG seed")->required();
}

void add_alpha(CLI::App* cmd, ExperimentConfig& config, bool required = true) {
  auto* opt = cmd->add_option_function<std::string>(
      "--alpha",
      [&config](const std::string& s) { config.alpha = lbs::parse_rat(s); },
      "Approximation parameter (rational, e.g. 2 or 3/2)");
  if (required) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Load-balancing sparsifiers and matching-contractors"};
  app.require_subcommand(1);

  ExperimentConfig config;

  auto* optload = app.add_subcommand("optload", "Exact optimal load");
  optload->add_option("--graph", config.graph_path, "Graph file")->required();
  optload->add_option("--clients", config.clients_text,
                      "Comma-separated client subset (default: all)");
  add_common(optload, config);

  auto* vs = app.add_subcommand("verify-sparsifier",
                                "Check a load-balancing sparsifier");
  vs->add_option("--graph", config.graph_path, "Graph file")->required();
  vs->add_option("--subgraph", config.subgraph_path, "Subgraph file")
      ->required();
  add_alpha(vs, config);
  vs->add_option("--method", config.method, "def, operational, or both");
  add_common(vs, config);

  auto* vmc = app.add_subcommand("verify-mc",
                                 "Verify a matching-contractor witness");
  vmc->add_option("--witness", config.witness_path, "Witness file")
      ->required();
  add_alpha(vmc, config, false);
  add_common(vmc, config);

  auto* cmc = app.add_subcommand("construct-mc",
                                 "String-indexed contractor construction");
  cmc->add_option("--w", config.w, "Alphabet size (>= 2)")->required();
  cmc->add_option("--k", config.k, "Half string length (>= 2)")->required();
  cmc->add_option("--family", config.family_text,
                  "Set family, e.g. \"1,2;3,4\"");
  cmc->add_option("--family-file", config.family_file,
                  "Family file (one comma-separated set per line)");
  cmc->add_option("--out-witness", config.out_witness, "Witness output path");
  add_common(cmc, config);

  auto* gf = app.add_subcommand("gen-family",
                                "Sample a small-intersection set family");
  gf->add_option("--k", config.k, "Subset size")->required();
  gf->add_option_function<std::string>(
        "--delta",
        [&config](const std::string& s) { config.delta = lbs::parse_rat(s); },
        "Intersection slack in (0, 1/2)")
      ->required();
  gf->add_option("--t", config.target_t, "Family size")->required();
  gf->add_option("--max-attempts", config.max_attempts, "Resample budget");
  gf->add_flag("--greedy", config.greedy, "Keep compatible sets one at a time");
  gf->add_option("--out-family", config.out_family, "Family output path");
  add_seed(gf, config);
  add_common(gf, config);

  auto* lp = app.add_subcommand("lp-solve", "Exact primal and dual LP");
  lp->add_option("--graph", config.graph_path, "Graph file")->required();
  add_alpha(lp, config);
  add_common(lp, config);

  auto* rp = app.add_subcommand("round-primal",
                                "Randomized rounding to a sparsifier");
  rp->add_option("--graph", config.graph_path, "Graph file")->required();
  add_alpha(rp, config);
  rp->add_option("--trials", config.trials, "Number of seeded trials");
  add_seed(rp, config);
  add_common(rp, config);

  auto* rd = app.add_subcommand("round-dual",
                                "Randomized rounding to a contractor");
  rd->add_option("--graph", config.graph_path, "Graph file")->required();
  add_alpha(rd, config);
  rd->add_option("--trials", config.trials, "Number of seeded trials");
  add_seed(rd, config);
  add_common(rd, config);

  auto* br = app.add_subcommand("brittleness",
                                "Sparsification-breaking edge removal");
  br->add_option("--witness", config.witness_path, "Witness file")
      ->required();
  add_alpha(br, config);
  br->add_option("--matching", config.matching_index,
                 "Matching index (default: all)");
  add_common(br, config);

  auto* hd = app.add_subcommand("hard-dist",
                                "Sample hard one-way instances");
  hd->add_option("--witness", config.witness_path, "Base witness file")
      ->required();
  add_alpha(hd, config);
  hd->add_option("--trials", config.trials, "Number of seeded trials");
  add_seed(hd, config);
  add_common(hd, config);

  auto* pr = app.add_subcommand("protocol", "One-way protocol simulation");
  pr->add_option("--graph", config.graph_path,
                 "Graph file (random mode)");
  pr->add_option("--witness", config.witness_path,
                 "Base witness file (adversarial mode)");
  add_alpha(pr, config);
  pr->add_option("--mode", config.mode, "random or adversarial");
  pr->add_option("--p", config.p, "Alice's edge share (random mode)");
  pr->add_option("--strategy", config.strategy,
                 "identity, empty, prand, round-primal, or minimal");
  pr->add_option("--strategy-p", config.strategy_p,
                 "Keep probability for the prand strategy");
  pr->add_option("--trials", config.trials, "Number of seeded trials");
  add_seed(pr, config);
  add_common(pr, config);

  auto* rs = app.add_subcommand("rs-convert",
                                "Induced-matching conversion");
  rs->add_option("--witness", config.witness_path, "Witness file")
      ->required();
  add_alpha(rs, config);
  rs->add_option("--out-witness", config.out_witness, "Witness output path");
  add_common(rs, config);

  auto* red = app.add_subcommand("reduce-servers",
                                 "Cap degrees and drop edgeless servers");
  red->add_option("--graph", config.graph_path, "Graph file")->required();
  red->add_option("--out-graph", config.out_graph, "Graph output path");
  add_common(red, config);

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  return lbs::cli::run(config);
}
