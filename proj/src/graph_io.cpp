#include "cheeger/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace cheeger {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long long to_integer(const std::string& tok, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
  return value;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

Graph load_graph(std::istream& in, GraphFormat format) {
  std::string raw;
  int line_no = 0;
  long long n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  int header_line = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tok = tokens_of(raw);
    if (tok.empty()) continue;

    if (format == GraphFormat::kEdgeList) {
      if (tok[0][0] == '#') continue;
      if (n < 0) {
        if (tok.size() != 2) throw ParseError(line_no, "expected header 'n m'");
        n = to_integer(tok[0], line_no);
        m = to_integer(tok[1], line_no);
        header_line = line_no;
        if (n < 0 || m < 0) throw ParseError(line_no, "negative size in header");
        continue;
      }
      if (tok.size() != 2) throw ParseError(line_no, "expected edge 'i j'");
      long long i = to_integer(tok[0], line_no);
      long long j = to_integer(tok[1], line_no);
      if (i < 1 || j < 1 || i > n || j > n) throw ParseError(line_no, "vertex index out of range");
      edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1));
    } else {
      if (tok[0] == "c") continue;
      if (tok[0] == "p") {
        if (n >= 0) throw ParseError(line_no, "duplicate problem line");
        if (tok.size() != 4) throw ParseError(line_no, "expected 'p edge n m'");
        n = to_integer(tok[2], line_no);
        m = to_integer(tok[3], line_no);
        header_line = line_no;
        if (n < 0 || m < 0) throw ParseError(line_no, "negative size in header");
        continue;
      }
      if (tok[0] == "e") {
        if (n < 0) throw ParseError(line_no, "edge before problem line");
        if (tok.size() != 3) throw ParseError(line_no, "expected 'e i j'");
        long long i = to_integer(tok[1], line_no);
        long long j = to_integer(tok[2], line_no);
        if (i < 1 || j < 1 || i > n || j > n) throw ParseError(line_no, "vertex index out of range");
        edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1));
        continue;
      }
      throw ParseError(line_no, "unknown line type '" + tok[0] + "'");
    }
  }
  if (n < 0) throw ParseError(line_no, "missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(header_line, "header declares " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
  return Graph(static_cast<int>(n), std::move(edges));
}

GraphFormat guess_format(const std::string& path) {
  if (ends_with(path, ".dimacs") || ends_with(path, ".col") || ends_with(path, ".clq"))
    return GraphFormat::kDimacs;
  return GraphFormat::kEdgeList;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_graph(in, guess_format(path));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << (u + 1) << ' ' << (v + 1) << '\n';
}

} // namespace cheeger
