#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cheeger {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Membership vector of a vertex subset S of {0, ..., n-1}.
class VertexSubset {
public:
  VertexSubset() = default;
  explicit VertexSubset(int n) : member_(static_cast<std::size_t>(n), 0) {}
  VertexSubset(int n, std::span<const Vertex> vertices);

  static VertexSubset from_mask(int n, std::uint64_t mask);

  int universe() const { return static_cast<int>(member_.size()); }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(Vertex v) const { return member_[static_cast<std::size_t>(v)] != 0; }

  void insert(Vertex v);
  void erase(Vertex v);

  std::vector<Vertex> vertices() const;
  VertexSubset complement() const;

  /// Lexicographic order of the 0/1 membership vectors (index 0 most significant).
  friend bool operator<(const VertexSubset& a, const VertexSubset& b) { return a.member_ < b.member_; }
  friend bool operator==(const VertexSubset& a, const VertexSubset& b) = default;

  std::string to_string() const;

private:
  std::vector<std::uint8_t> member_;
  int size_ = 0;
};

/// Simple connected undirected graph on n >= 3 vertices. Immutable after construction.
class Graph {
public:
  /// Validates simplicity, connectivity and n >= 3; throws GraphError otherwise.
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  bool adjacent(Vertex u, Vertex v) const;
  int min_degree() const;
  int max_degree() const;

  /// Neighbor bitmask of v; only available for n <= 64.
  std::uint64_t neighbor_mask(Vertex v) const { return masks_[static_cast<std::size_t>(v)]; }

  /// L = D - A.
  Eigen::MatrixXd laplacian() const;

  /// Graph with vertex v renamed perm[v].
  Graph relabeled(std::span<const Vertex> perm) const;

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint8_t> dense_;
};

/// |{(i,j) in E : i in S, j not in S}|. Throws if S is empty or all of V.
long long cut_value(const Graph& g, const VertexSubset& s);

/// |S| for subsets in the feasible range 1 <= |S| <= floor(n/2).
bool in_feasible_range(const Graph& g, const VertexSubset& s);

/// x^T M x for the incidence vector x of S.
double quadratic_form(const Eigen::MatrixXd& m, const VertexSubset& s);

} // namespace cheeger
