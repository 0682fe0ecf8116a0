#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cheeger/graph.hpp"

namespace cheeger {

enum class GraphFormat { kEdgeList, kDimacs };

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Edge list: '#' comments, "n m", then m lines "i j" (1-based).
/// DIMACS: 'c' comments, "p edge n m", then "e i j" lines.
Graph load_graph(std::istream& in, GraphFormat format);

/// Picks DIMACS for *.dimacs / *.col / *.clq files, edge list otherwise.
Graph load_graph_file(const std::string& path);
GraphFormat guess_format(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);

} // namespace cheeger
