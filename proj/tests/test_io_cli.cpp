#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lbs/cli.hpp"
#include "lbs/errors.hpp"
#include "lbs/io.hpp"
#include "oracles.hpp"

using namespace lbs;

TEST_CASE("graph parsing on the stated examples") {
  BipartiteGraph pm = parse_graph("2 2 2\n0 0\n1 1\n");
  CHECK(pm == BipartiteGraph(2, 2, {{0, 0}, {1, 1}}));

  BipartiteGraph single = parse_graph("1 1 1\n0 0\n");
  CHECK(single.num_edges() == 1);

  try {
    parse_graph("1 1 2\n0 0\n0 0\n");
    FAIL("duplicate edge accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("graph parsing errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("2 2\n") == 1);
  CHECK(line_of("1 1 1\n0\n") == 2);
  CHECK(line_of("1 1 1\n0 0 7\n") == 2);
  CHECK(line_of("1 1 1\n0 1\n") == 2);   // server out of range
  CHECK(line_of("1 1 1\n2 0\n") == 2);   // client out of range
  CHECK(line_of("1 1 0\n0 0\n") == 2);   // trailing content
  CHECK(line_of("1 1 2\n0 0\n") == 3);   // missing edge
}

TEST_CASE("comments and blank lines are ignored") {
  BipartiteGraph g =
      parse_graph("# a graph\n2 2 2 # header\n\n0 0\n# middle\n1 1\n");
  CHECK(g.num_edges() == 2);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 gen = rng::engine(909);
  for (int trial = 0; trial < 50; ++trial) {
    BipartiteGraph g = oracles::random_graph(
        gen, 1 + rng::uniform_int(gen, 8), 1 + rng::uniform_int(gen, 8),
        rng::uniform01(gen));
    CHECK(parse_graph(serialize_graph(g)) == g);
  }
}

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("lbs_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli commands run and replay byte-identically") {
  TempDir tmp;
  std::string graph_path = tmp.file("g.txt");
  write_graph_file(graph_path, oracles::complete_graph(3, 3));

  cli::ExperimentConfig config;
  config.command = "round-dual";
  config.graph_path = graph_path;
  config.alpha = Rat(2);
  config.seed = 31337;
  config.trials = 6;
  config.out_path = tmp.file("r1.csv");
  REQUIRE(cli::run(config) == cli::kOk);

  std::string first = slurp(*&config.out_path);
  config.out_path = tmp.file("r2.csv");
  REQUIRE(cli::run(config) == cli::kOk);
  CHECK(first == slurp(config.out_path));
  CHECK(first.find("verifies_alpha") != std::string::npos);

  SUBCASE("json mirrors the same rows") {
    config.format = "json";
    config.out_path = tmp.file("r.json");
    REQUIRE(cli::run(config) == cli::kOk);
    std::string json = slurp(config.out_path);
    CHECK(json.find("\"tool_version\": \"0.1.0\"") != std::string::npos);
    CHECK(json.find("\"verifies_alpha\"") != std::string::npos);
  }
}

TEST_CASE("cli witness pipeline: construct, verify, convert, harden") {
  TempDir tmp;
  cli::ExperimentConfig construct;
  construct.command = "construct-mc";
  construct.w = 2;
  construct.k = 2;
  construct.family_text = "1,2;3,4";
  construct.out_witness = tmp.file("w.mc");
  construct.out_path = tmp.file("construct.csv");
  REQUIRE(cli::run(construct) == cli::kOk);
  std::string report = slurp(construct.out_path);
  CHECK(report.find(",16,4,8,32,28,4,1") != std::string::npos);

  cli::ExperimentConfig verify_cmd;
  verify_cmd.command = "verify-mc";
  verify_cmd.witness_path = tmp.file("w.mc");
  verify_cmd.alpha = Rat(4);
  verify_cmd.out_path = tmp.file("verify.csv");
  REQUIRE(cli::run(verify_cmd) == cli::kOk);
  CHECK(slurp(verify_cmd.out_path).find("true") != std::string::npos);

  cli::ExperimentConfig convert;
  convert.command = "rs-convert";
  convert.witness_path = tmp.file("w.mc");
  convert.alpha = Rat(4);
  convert.out_witness = tmp.file("rs.mc");
  convert.out_path = tmp.file("rs.csv");
  REQUIRE(cli::run(convert) == cli::kOk);
  CHECK(slurp(convert.out_path).find("true,true") != std::string::npos);

  cli::ExperimentConfig brittle;
  brittle.command = "brittleness";
  brittle.witness_path = tmp.file("w.mc");
  brittle.alpha = Rat(2);
  brittle.out_path = tmp.file("brittle.csv");
  REQUIRE(cli::run(brittle) == cli::kOk);
  std::string rows = slurp(brittle.out_path);
  CHECK(rows.find("false") == std::string::npos);  // every removal breaks it
}

TEST_CASE("every cli command produces a report") {
  TempDir tmp;
  std::string graph_path = tmp.file("g.txt");
  write_graph_file(graph_path, oracles::complete_graph(3, 3));
  std::string base_path = tmp.file("base.mc");
  {
    std::ofstream out(base_path);
    out << "mc 8 8 2\nm 4\n0 0\n1 1\n2 2\n3 3\nm 4\n4 4\n5 5\n6 6\n7 7\n";
  }

  auto run_ok = [&](cli::ExperimentConfig config, const char* expect) {
    config.out_path = tmp.file(config.command + ".csv");
    REQUIRE(cli::run(config) == cli::kOk);
    std::string report = slurp(config.out_path);
    CHECK(report.find(expect) != std::string::npos);
  };

  cli::ExperimentConfig c;
  c.command = "optload";
  c.graph_path = graph_path;
  c.clients_text = "0,2";
  run_ok(c, ",true,1");

  c = {};
  c.command = "verify-sparsifier";
  c.graph_path = graph_path;
  c.subgraph_path = graph_path;
  c.alpha = Rat(1);
  run_ok(c, "operational,true");

  c = {};
  c.command = "verify-sparsifier";
  c.graph_path = graph_path;
  std::string sub_path = tmp.file("h.txt");
  write_graph_file(sub_path,
                   BipartiteGraph(3, 3, {{0, 0}, {1, 0}, {2, 0}}));
  c.subgraph_path = sub_path;
  c.alpha = Rat(2);
  c.method = "operational";
  run_ok(c, "operational,false,true,3,0+1+2,0");

  c = {};
  c.command = "lp-solve";
  c.graph_path = graph_path;
  c.alpha = Rat(2);
  run_ok(c, "optimal,3/2,optimal,3/2,0,");

  c = {};
  c.command = "round-primal";
  c.graph_path = graph_path;
  c.alpha = Rat(2);
  c.seed = 5;
  c.trials = 3;
  run_ok(c, "true,true");

  c = {};
  c.command = "hard-dist";
  c.witness_path = base_path;
  c.alpha = Rat(1);
  c.seed = 5;
  c.trials = 2;
  run_ok(c, ",true,4,");

  c = {};
  c.command = "protocol";
  c.graph_path = graph_path;
  c.alpha = Rat(2);
  c.seed = 5;
  c.trials = 2;
  c.strategy = "minimal";
  run_ok(c, ",true");

  c = {};
  c.command = "protocol";
  c.witness_path = base_path;
  c.mode = "adversarial";
  c.alpha = Rat(1);
  c.seed = 5;
  c.trials = 2;
  run_ok(c, "adversarial,identity");

  c = {};
  c.command = "reduce-servers";
  c.graph_path = graph_path;
  c.out_graph = tmp.file("reduced.txt");
  run_ok(c, "3,3,3,9,9,3");
  CHECK(read_graph_file(tmp.file("reduced.txt")) ==
        oracles::complete_graph(3, 3));

  c = {};
  c.command = "gen-family";
  c.k = 4;
  c.delta = Rat(3, 10);
  c.target_t = 3;
  c.seed = 11;
  c.out_family = tmp.file("fam.txt");
  run_ok(c, ",4,3/10,3,2,");

  cli::ExperimentConfig cons;
  cons.command = "construct-mc";
  cons.w = 2;
  cons.k = 4;
  cons.family_file = tmp.file("fam.txt");
  cons.out_witness = tmp.file("k4.mc");
  cons.out_path = tmp.file("construct4.csv");
  REQUIRE(cli::run(cons) == cli::kOk);
  CHECK(slurp(cons.out_path).find(",256,16,48,768,") != std::string::npos);
}

TEST_CASE("cli error taxonomy maps to stable exit codes") {
  TempDir tmp;
  cli::ExperimentConfig config;
  config.command = "optload";
  config.graph_path = tmp.file("missing.txt");
  config.out_path = tmp.file("out.csv");
  CHECK(cli::run(config) == cli::kInputError);

  std::string bad = tmp.file("bad.txt");
  {
    std::ofstream out(bad);
    out << "1 1 1\n0 0 0\n";
  }
  config.graph_path = bad;
  CHECK(cli::run(config) == cli::kParseError);

  cli::ExperimentConfig gen;
  gen.command = "gen-family";
  gen.k = 2;
  gen.delta = Rat(2, 5);
  gen.target_t = 7;  // impossible: only 6 two-subsets of [4]
  gen.seed = 3;
  gen.max_attempts = 25;
  gen.out_path = tmp.file("fam.csv");
  CHECK(cli::run(gen) == cli::kGenerationError);

  cli::ExperimentConfig unknown;
  unknown.command = "frobnicate";
  CHECK(cli::run(unknown) == cli::kInputError);
}

TEST_CASE("construct-mc honors the client budget variable") {
  TempDir tmp;
  cli::ExperimentConfig config;
  config.command = "construct-mc";
  config.w = 2;
  config.k = 2;
  config.family_text = "1,2;3,4";
  config.out_path = tmp.file("out.csv");
  setenv("LBS_MAX_CLIENTS", "8", 1);  // w^(2k) = 16 exceeds this
  CHECK(cli::run(config) == cli::kInputError);
  unsetenv("LBS_MAX_CLIENTS");
  CHECK(cli::run(config) == cli::kOk);
}

TEST_CASE("config hash tracks every parameter") {
  cli::ExperimentConfig a;
  a.command = "lp-solve";
  a.alpha = Rat(2);
  cli::ExperimentConfig b = a;
  CHECK(cli::config_hash(a) == cli::config_hash(b));
  b.alpha = Rat(3);
  CHECK(cli::config_hash(a) != cli::config_hash(b));
  b = a;
  b.seed = 1;
  CHECK(cli::config_hash(a) != cli::config_hash(b));
}
