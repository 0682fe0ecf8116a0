#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cheeger/graph.hpp"
#include "cheeger/rational.hpp"

namespace cheeger {

/// Exact integer type for instance weights and offsets. Penalty weights grow
/// like sigma * 2^(2 n_s) and offsets like sigma * n^2, which can leave int64.
using Wide = __int128;

std::string to_string(Wide value);
/// Throws std::invalid_argument on malformed text and std::overflow_error when out of range.
Wide parse_wide(const std::string& text);

/// min over binary x of (x^T Q x + linear^T x + constant) / scale, Q symmetric.
struct Qubo {
  explicit Qubo(int dimension = 0);

  int dim = 0;
  std::vector<Wide> quad;  // row-major dim x dim
  std::vector<Wide> linear;
  Wide constant = 0;
  std::int64_t scale = 1;

  Wide quadratic(int i, int j) const { return quad[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)]; }
  /// Sets Q_ij and Q_ji.
  void set_quadratic(int i, int j, Wide value);
  /// Scaled objective at x.
  Wide evaluate(const std::vector<std::uint8_t>& x) const;
};

enum class InstanceKind { kGeneric, kBisection, kDinkelbach };

/// Dense max-cut instance. Vertex 0 is the anchor: a QUBO variable is 1 iff its
/// vertex lies on the anchor's side. For instances built from a graph, vertices
/// 1..graph_vertices are the graph vertices in order; slack vertices follow.
/// The minimum of the source problem, times scale, equals offset - max-cut.
struct MaxCutInstance {
  explicit MaxCutInstance(int vertices = 0);

  int size = 0;
  std::vector<Wide> weights;  // row-major, symmetric, zero diagonal
  Wide offset = 0;
  std::int64_t scale = 1;
  int graph_vertices = 0;
  InstanceKind kind = InstanceKind::kGeneric;

  Wide weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) + static_cast<std::size_t>(j)]; }
  void set_weight(int i, int j, Wide w);
  /// Total weight of edges between side 0 and side 1.
  Wide cut_weight(const std::vector<std::uint8_t>& side) const;
  Wide max_abs_weight() const;
};

/// x^T (L + mu J) x - 2 mu k e^T x + mu k^2, scaled by the denominator of mu.
/// With upper_bound_cut given, mu must exceed it so infeasible x stay above every k-subset.
Qubo bisection_to_qubo(const Graph& g, int k, const Rational& mu, std::optional<std::int64_t> upper_bound_cut = std::nullopt);

/// Reduction with one extra anchor vertex; keeps scale.
MaxCutInstance qubo_to_maxcut(const Qubo& q);

/// Closed-form bisection instance with penalty mu = upper_bound_cut + 1/4, applied as
/// the integer 4 mu. offset - max-cut equals the minimum cut over |S| = k.
MaxCutInstance bisection_to_maxcut(const Graph& g, int k, std::int64_t upper_bound_cut);

/// Binary slack encoding for 1 <= e^T x <= floor(n/2): weights 1, 2, ..., 2^top_index.
struct SlackEncoding {
  int top_index = -1;
  std::vector<long long> values;
};
SlackEncoding slack_encoding(int n);

/// Penalty that keeps the Dinkelbach QUBO exact for every gamma >= 0:
/// gamma_n * n + gamma_d * min_degree + 1.
std::int64_t safe_dinkelbach_penalty(const Graph& g, std::int64_t gamma_n, std::int64_t gamma_d);

/// Penalised QUBO over (x, alpha, beta) for min { gamma_d x^T L x - gamma_n e^T x : x in F }.
Qubo dinkelbach_to_qubo(const Graph& g, std::int64_t gamma_n, std::int64_t gamma_d, std::int64_t penalty);

/// Closed-form instance for the same problem. Without a penalty the safe one is used.
/// A penalty only above gamma_n * n is exact only when the optimum is <= 0.
MaxCutInstance dinkelbach_to_maxcut(const Graph& g, std::int64_t gamma_n, std::int64_t gamma_d,
                                    std::optional<std::int64_t> penalty = std::nullopt);

/// QUBO assignment of a bipartition: variable i is 1 iff vertex i+1 shares the anchor's side.
std::vector<std::uint8_t> decode_assignment(const MaxCutInstance& inst, const std::vector<std::uint8_t>& side);
/// Graph subset of a bipartition; slack vertices are dropped.
VertexSubset decode_cut(const MaxCutInstance& inst, const std::vector<std::uint8_t>& side);
/// Bipartition representing subset s, with slack vertices set to the matching encoding.
std::vector<std::uint8_t> encode_cut(const MaxCutInstance& inst, const VertexSubset& s);

/// Text format: "# maxcut-instance offset O scale S graph-vertices n kind K", then "N M",
/// then M lines "i j w" (1-based, i < j, nonzero w).
void write_instance(std::ostream& out, const MaxCutInstance& inst);
MaxCutInstance read_instance(std::istream& in);
MaxCutInstance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const MaxCutInstance& inst);

} // namespace cheeger
