#pragma once

#include <iosfwd>
#include <string>

#include "lbs/graph.hpp"

namespace lbs {

// Graph text format: first line "<n_left> <n_right> <m>", then m lines
// "<client> <server>", whitespace-delimited, 0-based. '#' starts a comment;
// blank lines are ignored. Duplicate edges are rejected.
BipartiteGraph parse_graph(const std::string& text);
BipartiteGraph read_graph_file(const std::string& path);

std::string serialize_graph(const BipartiteGraph& g);
void write_graph_file(const std::string& path, const BipartiteGraph& g);

}  // namespace lbs
