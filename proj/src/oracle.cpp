#include "cheeger/oracle.hpp"

#include <bit>
#include <cstdint>
#include <limits>

namespace cheeger {

namespace {

void check_guard(const Graph& g, int guard) {
  if (g.num_vertices() > guard || g.num_vertices() > 62)
    throw GraphError("enumeration guard exceeded: n = " + std::to_string(g.num_vertices()));
}

long long mask_cut(const Graph& g, std::uint64_t mask) {
  long long cut = 0;
  std::uint64_t rest = mask;
  std::uint64_t outside = ~mask;
  while (rest) {
    int v = std::countr_zero(rest);
    rest &= rest - 1;
    cut += std::popcount(g.neighbor_mask(v) & outside);
  }
  return cut;
}

// Numeric order of this key is lexicographic order of the membership vector.
std::uint64_t lex_key(std::uint64_t mask, int n) {
  std::uint64_t key = 0;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) key |= std::uint64_t{1} << (n - 1 - v);
  return key;
}

template <typename Visit>
void for_each_k_subset(int n, int k, Visit&& visit) {
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (mask < limit) {
    visit(mask);
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

struct BestMask {
  long long cut = std::numeric_limits<long long>::max();
  std::uint64_t mask = 0;
};

BestMask best_of_size(const Graph& g, int k) {
  const int n = g.num_vertices();
  BestMask best;
  for_each_k_subset(n, k, [&](std::uint64_t mask) {
    long long cut = mask_cut(g, mask);
    if (cut < best.cut || (cut == best.cut && lex_key(mask, n) < lex_key(best.mask, n))) {
      best.cut = cut;
      best.mask = mask;
    }
  });
  return best;
}

} // namespace

BisectionResult brute_force_bisection(const Graph& g, int k, int guard) {
  check_guard(g, guard);
  if (k < 1 || k > g.num_vertices() / 2) throw GraphError("bisection size out of range: " + std::to_string(k));
  auto best = best_of_size(g, k);
  return {best.cut, VertexSubset::from_mask(g.num_vertices(), best.mask)};
}

ExpansionResult brute_force_h(const Graph& g, int guard) {
  check_guard(g, guard);
  const int n = g.num_vertices();
  Rational best_value;
  std::uint64_t best_mask = 0;
  bool have = false;
  for (int k = 1; k <= n / 2; ++k) {
    auto cand = best_of_size(g, k);
    Rational value(cand.cut, k);
    if (!have || value < best_value ||
        (value == best_value && lex_key(cand.mask, n) < lex_key(best_mask, n))) {
      best_value = value;
      best_mask = cand.mask;
      have = true;
    }
  }
  return {best_value, VertexSubset::from_mask(n, best_mask)};
}

long long brute_force_mincut(const Graph& g, int guard) {
  check_guard(g, guard);
  const int n = g.num_vertices();
  long long best = std::numeric_limits<long long>::max();
  // Fix vertex n-1 outside S; every cut has a representative of this form.
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) best = std::min(best, mask_cut(g, mask));
  return best;
}

} // namespace cheeger

namespace cheeger {

MaxCutResult brute_force_maxcut(const MaxCutInstance& inst, int guard) {
  if (inst.size > guard) throw std::invalid_argument("instance exceeds enumeration guard");
  MaxCutResult best;
  best.side.assign(static_cast<std::size_t>(inst.size), 0);
  if (inst.size <= 1) return best;
  std::vector<std::uint8_t> side(static_cast<std::size_t>(inst.size), 0);
  Wide value = 0;
  const std::uint64_t steps = 1ULL << (inst.size - 1);
  for (std::uint64_t step = 1; step < steps; ++step) {
    // Gray code: flip vertex 1 + (index of lowest set bit).
    const int v = 1 + __builtin_ctzll(step);
    for (int u = 0; u < inst.size; ++u) {
      if (u == v) continue;
      const Wide w = inst.weight(u, v);
      value += side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)] ? w : -w;
    }
    side[static_cast<std::size_t>(v)] ^= 1;
    if (value > best.value) {
      best.value = value;
      best.side = side;
    }
  }
  return best;
}

} // namespace cheeger
