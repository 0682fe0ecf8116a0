#include "cheeger/transforms.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cheeger/graph_io.hpp"

namespace cheeger {
namespace {

Wide add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("instance weight overflow");
  return r;
}

Wide mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("instance weight overflow");
  return r;
}

std::size_t at(int i, int j, int dim) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j); }

void check_k(const Graph& g, int k) {
  if (k < 1 || k > g.num_vertices() / 2)
    throw GraphError("subset size " + std::to_string(k) + " outside [1, n/2]");
}

void check_gamma(std::int64_t gamma_n, std::int64_t gamma_d) {
  if (gamma_d <= 0) throw std::invalid_argument("gamma denominator must be positive");
  if (gamma_n < 0) throw std::invalid_argument("gamma must be nonnegative");
  if (std::gcd(gamma_n, gamma_d) != 1) throw std::invalid_argument("gamma must be in lowest terms");
}

const char* kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kBisection: return "bisection";
    case InstanceKind::kDinkelbach: return "dinkelbach";
    default: return "generic";
  }
}

} // namespace

std::string to_string(Wide value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  std::string digits;
  while (value != 0) {
    int d = static_cast<int>(value % 10);
    digits.push_back(static_cast<char>('0' + (negative ? -d : d)));
    value /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Wide parse_wide(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  if (pos == text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  Wide value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("not an integer: '" + text + "'");
    value = add(mul(value, 10), negative ? -(c - '0') : (c - '0'));
  }
  return value;
}

Qubo::Qubo(int dimension)
    : dim(dimension), quad(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension), 0),
      linear(static_cast<std::size_t>(dimension), 0) {
  if (dimension < 0) throw std::invalid_argument("negative QUBO dimension");
}

void Qubo::set_quadratic(int i, int j, Wide value) {
  quad[at(i, j, dim)] = value;
  quad[at(j, i, dim)] = value;
}

Wide Qubo::evaluate(const std::vector<std::uint8_t>& x) const {
  if (static_cast<int>(x.size()) != dim) throw std::invalid_argument("assignment has wrong length");
  Wide total = constant;
  for (int i = 0; i < dim; ++i) {
    if (!x[static_cast<std::size_t>(i)]) continue;
    total = add(total, linear[static_cast<std::size_t>(i)]);
    for (int j = 0; j < dim; ++j)
      if (x[static_cast<std::size_t>(j)]) total = add(total, quadratic(i, j));
  }
  return total;
}

MaxCutInstance::MaxCutInstance(int vertices)
    : size(vertices), weights(static_cast<std::size_t>(vertices) * static_cast<std::size_t>(vertices), 0) {
  if (vertices < 0) throw std::invalid_argument("negative instance size");
}

void MaxCutInstance::set_weight(int i, int j, Wide w) {
  if (i == j) throw std::invalid_argument("max-cut instances have no loops");
  weights[at(i, j, size)] = w;
  weights[at(j, i, size)] = w;
}

Wide MaxCutInstance::cut_weight(const std::vector<std::uint8_t>& side) const {
  if (static_cast<int>(side.size()) != size) throw std::invalid_argument("bipartition has wrong length");
  Wide total = 0;
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if (side[static_cast<std::size_t>(i)] != side[static_cast<std::size_t>(j)]) total = add(total, weight(i, j));
  return total;
}

Wide MaxCutInstance::max_abs_weight() const {
  Wide best = 0;
  for (Wide w : weights) best = std::max(best, w < 0 ? -w : w);
  return best;
}

Qubo bisection_to_qubo(const Graph& g, int k, const Rational& mu, std::optional<std::int64_t> upper_bound_cut) {
  check_k(g, k);
  if (mu <= Rational(0)) throw std::invalid_argument("penalty must be positive");
  if (upper_bound_cut && mu <= Rational(*upper_bound_cut))
    throw std::invalid_argument("penalty " + mu.to_string() + " does not exceed the bisection bound");
  const int n = g.num_vertices();
  const Wide p = mu.num(), q = mu.den();
  Qubo out(n);
  out.scale = mu.den();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Wide laplace = i == j ? g.degree(i) : (g.adjacent(i, j) ? -1 : 0);
      out.quad[at(i, j, n)] = add(mul(q, laplace), p);
    }
    out.linear[static_cast<std::size_t>(i)] = mul(mul(-2, p), k);
  }
  out.constant = mul(mul(p, k), k);
  return out;
}

MaxCutInstance qubo_to_maxcut(const Qubo& q) {
  MaxCutInstance inst(q.dim + 1);
  inst.scale = q.scale;
  inst.graph_vertices = q.dim;
  Wide offset = q.constant;
  for (int i = 0; i < q.dim; ++i) {
    Wide row = 0;
    for (int j = 0; j < q.dim; ++j) {
      row = add(row, q.quadratic(i, j));
      if (j != i) inst.set_weight(i + 1, j + 1, q.quadratic(i, j));
    }
    inst.set_weight(0, i + 1, add(row, q.linear[static_cast<std::size_t>(i)]));
    offset = add(offset, add(row, q.linear[static_cast<std::size_t>(i)]));
  }
  inst.offset = offset;
  return inst;
}

MaxCutInstance bisection_to_maxcut(const Graph& g, int k, std::int64_t upper_bound_cut) {
  check_k(g, k);
  if (upper_bound_cut < 0) throw std::invalid_argument("bisection bound must be nonnegative");
  const int n = g.num_vertices();
  const Wide penalty = add(mul(4, upper_bound_cut), 1);  // 4 mu
  MaxCutInstance inst(n + 1);
  inst.kind = InstanceKind::kBisection;
  inst.graph_vertices = n;
  for (int i = 0; i < n; ++i) {
    inst.set_weight(0, i + 1, mul(penalty, n - 2 * k));
    for (int j = i + 1; j < n; ++j) inst.set_weight(i + 1, j + 1, g.adjacent(i, j) ? penalty - 1 : penalty);
  }
  inst.offset = mul(penalty, static_cast<Wide>(n - k) * (n - k));
  return inst;
}

SlackEncoding slack_encoding(int n) {
  if (n < 3) throw GraphError("slack encoding needs n >= 3");
  const int half = n / 2;
  int bits = 0;  // ceil(log2(half))
  while ((1LL << bits) < half) ++bits;
  SlackEncoding enc;
  enc.top_index = bits - 1;
  for (int i = 0; i <= enc.top_index; ++i) enc.values.push_back(1LL << i);
  return enc;
}

std::int64_t safe_dinkelbach_penalty(const Graph& g, std::int64_t gamma_n, std::int64_t gamma_d) {
  check_gamma(gamma_n, gamma_d);
  Wide sigma = add(add(mul(gamma_n, g.num_vertices()), mul(gamma_d, g.min_degree())), 1);
  if (sigma > INT64_MAX) throw std::overflow_error("penalty does not fit in 64 bits");
  return static_cast<std::int64_t>(sigma);
}

Qubo dinkelbach_to_qubo(const Graph& g, std::int64_t gamma_n, std::int64_t gamma_d, std::int64_t penalty) {
  check_gamma(gamma_n, gamma_d);
  const int n = g.num_vertices();
  if (Wide(penalty) <= mul(gamma_n, n)) throw std::invalid_argument("penalty must exceed gamma_n * n");
  const auto enc = slack_encoding(n);
  const int slots = enc.top_index + 1;
  const int dim = n + 2 * slots;
  const Wide half = n / 2;

  // sigma ((a^T z - 1)^2 + (b^T z - half)^2) with a = (e, -v, 0) and b = (e, 0, v).
  std::vector<Wide> a(static_cast<std::size_t>(dim), 0), b(static_cast<std::size_t>(dim), 0);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < slots; ++i) {
    a[static_cast<std::size_t>(n + i)] = -enc.values[static_cast<std::size_t>(i)];
    b[static_cast<std::size_t>(n + slots + i)] = enc.values[static_cast<std::size_t>(i)];
  }
  Qubo q(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Wide v = mul(penalty, add(mul(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]),
                                mul(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)])));
      if (i < n && j < n) v = add(v, mul(gamma_d, i == j ? g.degree(i) : (g.adjacent(i, j) ? -1 : 0)));
      q.quad[at(i, j, dim)] = v;
    }
    Wide lin = mul(mul(-2, penalty), add(a[static_cast<std::size_t>(i)], mul(half, b[static_cast<std::size_t>(i)])));
    if (i < n) lin = add(lin, -gamma_n);
    q.linear[static_cast<std::size_t>(i)] = lin;
  }
  q.constant = mul(penalty, add(1, mul(half, half)));
  return q;
}

MaxCutInstance dinkelbach_to_maxcut(const Graph& g, std::int64_t gamma_n, std::int64_t gamma_d,
                                    std::optional<std::int64_t> penalty) {
  check_gamma(gamma_n, gamma_d);
  const int n = g.num_vertices();
  const Wide sigma = penalty ? *penalty : safe_dinkelbach_penalty(g, gamma_n, gamma_d);
  if (sigma <= mul(gamma_n, n)) throw std::invalid_argument("penalty must exceed gamma_n * n");
  const auto enc = slack_encoding(n);
  const int slots = enc.top_index + 1;
  const Wide half = n / 2;
  const Wide top = Wide(1) << slots;  // 2^(n_s + 1)

  MaxCutInstance inst(n + 2 * slots + 1);
  inst.kind = InstanceKind::kDinkelbach;
  inst.graph_vertices = n;
  auto alpha = [&](int i) { return n + 1 + i; };
  auto beta = [&](int i) { return n + 1 + slots + i; };

  for (int u = 0; u < n; ++u) {
    inst.set_weight(0, u + 1, add(mul(mul(2, sigma), n - 1 - half), -gamma_n));
    for (int w = u + 1; w < n; ++w) inst.set_weight(u + 1, w + 1, add(mul(2, sigma), g.adjacent(u, w) ? -gamma_d : 0));
  }
  for (int i = 0; i < slots; ++i) {
    const Wide pi = Wide(1) << i;
    inst.set_weight(0, alpha(i), mul(mul(sigma, top - (n - 1)), pi));
    inst.set_weight(0, beta(i), mul(mul(sigma, top - 2 * half + n - 1), pi));
    for (int u = 0; u < n; ++u) {
      inst.set_weight(alpha(i), u + 1, mul(-pi, sigma));
      inst.set_weight(beta(i), u + 1, mul(pi, sigma));
    }
    for (int j = i + 1; j < slots; ++j) {
      inst.set_weight(alpha(i), alpha(j), mul(Wide(1) << (i + j), sigma));
      inst.set_weight(beta(i), beta(j), mul(Wide(1) << (i + j), sigma));
    }
  }
  Wide bracket = add(mul(2 * top, top - half - 1), Wide(2) * n * n - 2 * n + 1 + half * (half - 2 * n + 2));
  inst.offset = add(mul(-gamma_n, n), mul(sigma, bracket));
  return inst;
}

std::vector<std::uint8_t> decode_assignment(const MaxCutInstance& inst, const std::vector<std::uint8_t>& side) {
  if (static_cast<int>(side.size()) != inst.size) throw std::invalid_argument("bipartition has wrong length");
  std::vector<std::uint8_t> x(static_cast<std::size_t>(inst.size - 1));
  for (int i = 1; i < inst.size; ++i) x[static_cast<std::size_t>(i - 1)] = side[static_cast<std::size_t>(i)] == side[0];
  return x;
}

VertexSubset decode_cut(const MaxCutInstance& inst, const std::vector<std::uint8_t>& side) {
  auto x = decode_assignment(inst, side);
  VertexSubset s(inst.graph_vertices);
  for (int i = 0; i < inst.graph_vertices; ++i)
    if (x[static_cast<std::size_t>(i)]) s.insert(i);
  return s;
}

std::vector<std::uint8_t> encode_cut(const MaxCutInstance& inst, const VertexSubset& s) {
  if (s.universe() != inst.graph_vertices) throw std::invalid_argument("subset does not match instance");
  std::vector<std::uint8_t> side(static_cast<std::size_t>(inst.size), 1);
  side[0] = 0;
  for (int i = 0; i < inst.graph_vertices; ++i)
    if (s.contains(i)) side[static_cast<std::size_t>(i + 1)] = 0;
  if (inst.kind == InstanceKind::kDinkelbach) {
    const int n = inst.graph_vertices;
    const int slots = (inst.size - n - 1) / 2;
    const int lower_slack = s.size() - 1, upper_slack = n / 2 - s.size();
    if (lower_slack < 0 || upper_slack < 0) throw std::invalid_argument("subset size outside [1, n/2]");
    for (int i = 0; i < slots; ++i) {
      if ((lower_slack >> i) & 1) side[static_cast<std::size_t>(n + 1 + i)] = 0;
      if ((upper_slack >> i) & 1) side[static_cast<std::size_t>(n + 1 + slots + i)] = 0;
    }
  }
  return side;
}

void write_instance(std::ostream& out, const MaxCutInstance& inst) {
  int edges = 0;
  for (int i = 0; i < inst.size; ++i)
    for (int j = i + 1; j < inst.size; ++j) edges += inst.weight(i, j) != 0;
  out << "# maxcut-instance offset " << to_string(inst.offset) << " scale " << inst.scale << " graph-vertices "
      << inst.graph_vertices << " kind " << kind_name(inst.kind) << '\n';
  out << inst.size << ' ' << edges << '\n';
  for (int i = 0; i < inst.size; ++i)
    for (int j = i + 1; j < inst.size; ++j)
      if (inst.weight(i, j) != 0) out << i + 1 << ' ' << j + 1 << ' ' << to_string(inst.weight(i, j)) << '\n';
}

MaxCutInstance read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  Wide offset = 0;
  std::int64_t scale = 1;
  int graph_vertices = -1;
  InstanceKind kind = InstanceKind::kGeneric;
  std::optional<MaxCutInstance> inst;
  int expected = 0, seen = 0;

  auto wide_field = [&](const std::string& text) {
    try {
      return parse_wide(text);
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first[0] == '#') {
      std::string tag;
      if (first == "#" && fields >> tag && tag == "maxcut-instance") {
        std::string key, value;
        while (fields >> key >> value) {
          if (key == "offset") offset = wide_field(value);
          else if (key == "scale") scale = static_cast<std::int64_t>(wide_field(value));
          else if (key == "graph-vertices") graph_vertices = static_cast<int>(wide_field(value));
          else if (key == "kind") kind = value == "bisection" ? InstanceKind::kBisection
                                       : value == "dinkelbach" ? InstanceKind::kDinkelbach
                                                               : InstanceKind::kGeneric;
          else throw ParseError(line_no, "unknown header field '" + key + "'");
        }
        if (scale < 1) throw ParseError(line_no, "scale must be positive");
      }
      continue;
    }
    std::string second, third, extra;
    fields >> second >> third;
    if (fields >> extra) throw ParseError(line_no, "too many fields");
    if (!inst) {
      if (second.empty() || !third.empty()) throw ParseError(line_no, "expected header 'N M'");
      Wide size = wide_field(first), m = wide_field(second);
      if (size < 1 || size > 100000 || m < 0) throw ParseError(line_no, "bad instance header");
      inst.emplace(static_cast<int>(size));
      expected = static_cast<int>(m);
      continue;
    }
    if (third.empty()) throw ParseError(line_no, "expected 'i j w'");
    Wide i = wide_field(first), j = wide_field(second), w = wide_field(third);
    if (i < 1 || j < 1 || i > inst->size || j > inst->size || i == j)
      throw ParseError(line_no, "vertex index out of range");
    if (inst->weight(static_cast<int>(i - 1), static_cast<int>(j - 1)) != 0) throw ParseError(line_no, "duplicate pair");
    inst->set_weight(static_cast<int>(i - 1), static_cast<int>(j - 1), w);
    ++seen;
  }
  if (!inst) throw ParseError(line_no, "missing header");
  if (seen != expected)
    throw ParseError(line_no, "header declares " + std::to_string(expected) + " pairs, found " + std::to_string(seen));
  inst->offset = offset;
  inst->scale = scale;
  inst->kind = kind;
  inst->graph_vertices = graph_vertices < 0 ? inst->size - 1 : graph_vertices;
  if (inst->graph_vertices > inst->size - 1) throw ParseError(line_no, "graph-vertices exceeds instance size");
  return *inst;
}

MaxCutInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in);
}

void write_instance_file(const std::string& path, const MaxCutInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_instance(out, inst);
}

} // namespace cheeger
