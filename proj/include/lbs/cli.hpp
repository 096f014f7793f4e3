#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lbs/rational.hpp"

namespace lbs::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes, stable across versions.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kParseError = 2;
inline constexpr int kInputError = 3;
inline constexpr int kGenerationError = 4;
inline constexpr int kIoError = 5;

struct ExperimentConfig {
  std::string command;

  std::optional<std::uint64_t> seed;
  std::optional<Rat> alpha;
  std::optional<Rat> delta;
  std::optional<int> w;
  std::optional<int> k;
  std::optional<int> target_t;
  std::optional<int> matching_index;
  int trials = 1;
  double p = 0.5;
  double strategy_p = 0.5;
  long long max_attempts = 10000;
  bool greedy = false;

  std::optional<std::string> graph_path;
  std::optional<std::string> subgraph_path;
  std::optional<std::string> witness_path;
  std::optional<std::string> family_text;
  std::optional<std::string> family_file;
  std::optional<std::string> clients_text;
  std::optional<std::string> out_witness;
  std::optional<std::string> out_graph;
  std::optional<std::string> out_family;

  std::string method = "both";     // verify-sparsifier
  std::string strategy = "identity";
  std::string mode = "random";     // protocol
  std::string format = "csv";
  std::string out_path = "-";
};

// FNV-1a over the canonical serialization of the config; part of every
// report row's provenance.
std::string config_hash(const ExperimentConfig& config);

// Executes the configured command and writes its report. Returns an exit
// code; error text goes to stderr.
int run(const ExperimentConfig& config);

}  // namespace lbs::cli
