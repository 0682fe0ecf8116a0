#include "cheeger/graph.hpp"

#include <algorithm>
#include <queue>

namespace cheeger {

VertexSubset::VertexSubset(int n, std::span<const Vertex> vertices) : VertexSubset(n) {
  for (Vertex v : vertices) {
    if (v < 0 || v >= n) throw GraphError("subset vertex out of range");
    insert(v);
  }
}

VertexSubset VertexSubset::from_mask(int n, std::uint64_t mask) {
  VertexSubset s(n);
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) s.insert(v);
  return s;
}

void VertexSubset::insert(Vertex v) {
  auto& slot = member_[static_cast<std::size_t>(v)];
  if (!slot) {
    slot = 1;
    ++size_;
  }
}

void VertexSubset::erase(Vertex v) {
  auto& slot = member_[static_cast<std::size_t>(v)];
  if (slot) {
    slot = 0;
    --size_;
  }
}

std::vector<Vertex> VertexSubset::vertices() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (int v = 0; v < universe(); ++v)
    if (member_[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

VertexSubset VertexSubset::complement() const {
  VertexSubset c(universe());
  for (int v = 0; v < universe(); ++v)
    if (!contains(v)) c.insert(v);
  return c;
}

std::string VertexSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Vertex v : vertices()) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 3) throw GraphError("graph needs at least 3 vertices, got " + std::to_string(n_));
  adjacency_.resize(static_cast<std::size_t>(n_));
  dense_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw GraphError("edge endpoint out of range: " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
    auto& cell = dense_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)];
    if (cell)
      throw GraphError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    cell = 1;
    dense_[static_cast<std::size_t>(v) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(u)] = 1;
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n_), 0);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : adjacency_[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached != n_) throw GraphError("graph is disconnected");

  if (n_ <= 64) {
    masks_.assign(static_cast<std::size_t>(n_), 0);
    for (auto [u, v] : edges_) {
      masks_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
      masks_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  return dense_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
}

int Graph::min_degree() const {
  int d = n_;
  for (Vertex v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

Eigen::MatrixXd Graph::laplacian() const {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n_, n_);
  for (auto [u, v] : edges_) {
    lap(u, v) = -1.0;
    lap(v, u) = -1.0;
    lap(u, u) += 1.0;
    lap(v, v) += 1.0;
  }
  return lap;
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw GraphError("permutation size mismatch");
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (auto [u, v] : edges_)
    mapped.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return Graph(n_, std::move(mapped));
}

long long cut_value(const Graph& g, const VertexSubset& s) {
  if (s.universe() != g.num_vertices()) throw GraphError("subset universe does not match graph");
  if (s.empty() || s.size() == g.num_vertices()) throw GraphError("cut needs a nonempty proper subset");
  long long cut = 0;
  for (auto [u, v] : g.edges())
    if (s.contains(u) != s.contains(v)) ++cut;
  return cut;
}

bool in_feasible_range(const Graph& g, const VertexSubset& s) {
  return s.size() >= 1 && s.size() <= g.num_vertices() / 2;
}

double quadratic_form(const Eigen::MatrixXd& m, const VertexSubset& s) {
  double total = 0.0;
  auto members = s.vertices();
  for (Vertex i : members)
    for (Vertex j : members) total += m(i, j);
  return total;
}

} // namespace cheeger
