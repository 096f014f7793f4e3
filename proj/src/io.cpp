#include "lbs/io.hpp"

#include <fstream>
#include <sstream>

#include "lbs/errors.hpp"

namespace lbs {

namespace {

// Yields (line number, content) for non-blank lines with comments stripped.
class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  bool next(int& lineno, std::string& content) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lineno = lineno_;
      content = line;
      return true;
    }
    return false;
  }

  int last_line() const { return lineno_; }

 private:
  std::istringstream in_;
  int lineno_ = 0;
};

}  // namespace

BipartiteGraph parse_graph(const std::string& text) {
  LineReader reader(text);
  int lineno = 0;
  std::string line;
  if (!reader.next(lineno, line))
    throw ParseError(reader.last_line() + 1, "missing header line");
  std::istringstream head(line);
  long long n_left, n_right, m;
  std::string extra;
  if (!(head >> n_left >> n_right >> m) || (head >> extra))
    throw ParseError(lineno, "expected header: <n_left> <n_right> <m>");
  if (n_left < 0 || n_right < 0 || m < 0)
    throw ParseError(lineno, "negative counts in header");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (long long i = 0; i < m; ++i) {
    if (!reader.next(lineno, line))
      throw ParseError(reader.last_line() + 1,
                       "expected " + std::to_string(m) + " edges, got " +
                           std::to_string(i));
    std::istringstream el(line);
    long long c, s;
    if (!(el >> c >> s) || (el >> extra))
      throw ParseError(lineno, "expected edge line: <client> <server>");
    if (c < 0 || c >= n_left)
      throw ParseError(lineno, "client index out of range");
    if (s < 0 || s >= n_right)
      throw ParseError(lineno, "server index out of range");
    Edge e{static_cast<int>(c), static_cast<int>(s)};
    for (const Edge& prev : edges)
      if (prev == e) throw ParseError(lineno, "duplicate edge");
    edges.push_back(e);
  }
  if (reader.next(lineno, line))
    throw ParseError(lineno, "unexpected content after edge list");
  return BipartiteGraph(static_cast<int>(n_left), static_cast<int>(n_right),
                        std::move(edges));
}

BipartiteGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const BipartiteGraph& g) {
  std::ostringstream out;
  out << g.num_clients() << " " << g.num_servers() << " " << g.num_edges()
      << "\n";
  for (const Edge& e : g.edges()) out << e.client << " " << e.server << "\n";
  return out.str();
}

void write_graph_file(const std::string& path, const BipartiteGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << serialize_graph(g);
}

}  // namespace lbs
