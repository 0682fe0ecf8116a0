#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "cheeger/bounds.hpp"
#include "cheeger/dinkelbach.hpp"
#include "cheeger/generators.hpp"
#include "cheeger/graph_io.hpp"
#include "cheeger/heuristic.hpp"
#include "cheeger/log.hpp"
#include "cheeger/maxcut.hpp"
#include "cheeger/oracle.hpp"
#include "cheeger/split_bound.hpp"
#include "cheeger/transforms.hpp"

namespace cheeger::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string one_based(const VertexSubset& s) {
  std::string out;
  for (Vertex v : s.vertices()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v + 1);
  }
  return out;
}

Json one_based_json(const VertexSubset& s) {
  Json arr = Json::array();
  for (Vertex v : s.vertices()) arr.push_back(v + 1);
  return arr;
}

Json rational_json(const Rational& r) {
  return Json{{"num", r.num()}, {"den", r.den()}, {"value", r.to_double()}};
}

double shown(double ms, bool times) { return times ? ms : 0.0; }

std::string decimal(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

struct Context {
  RunConfig config;
  std::ostream* out;
  std::ostream* err;
  std::unique_ptr<std::ofstream> file;

  std::ostream& sink() {
    if (config.out.empty()) return *out;
    if (!file) {
      file = std::make_unique<std::ofstream>(config.out);
      if (!*file) throw std::runtime_error("cannot write " + config.out);
    }
    return *file;
  }
};

MaxCutOptions maxcut_options(const RunConfig& c) {
  MaxCutOptions mc;
  mc.node_limit = c.node_limit;
  mc.time_limit_seconds = c.time_limit_seconds;
  mc.workers = c.workers;
  mc.seed = c.seed;
  return mc;
}

SplitOptions split_options(const RunConfig& c) {
  SplitOptions o;
  o.sa.seed = c.seed;
  o.maxcut = maxcut_options(c);
  o.order_seed = c.seed;
  return o;
}

DinkelbachOptions dinkelbach_options(const RunConfig& c) {
  DinkelbachOptions o;
  o.sa.seed = c.seed;
  o.maxcut = maxcut_options(c);
  return o;
}

Graph load(const std::string& path) {
  auto g = load_graph_file(path);
  log::info("loaded " + path + ": n = " + std::to_string(g.num_vertices()) + ", m = " + std::to_string(g.num_edges()));
  return g;
}

SolveReport solve_brute(const Graph& g) {
  const auto start = std::chrono::steady_clock::now();
  auto r = brute_force_h(g);
  SolveReport report;
  report.method = "brute";
  report.value = r.value;
  report.lower_bound = r.value;
  report.witness = r.witness;
  report.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolveReport solve_graph(const Graph& g, const RunConfig& c) {
  if (c.method == "brute") return solve_brute(g);
  if (c.method == "dinkelbach") return dinkelbach_solve(g, dinkelbach_options(c));
  return split_and_bound(g, split_options(c));
}

// ---------------------------------------------------------------------------
// Report rendering. CSV column order is frozen; see README.

const char* kSolveCsvHeader =
    "method,status,h_num,h_den,h,lower_num,lower_den,witness,candidates,solved_in_root,bnb_nodes,iterations,"
    "pre_elimination_ms,total_ms";

const char* kBoundsCsvHeader = "k,lower_num,lower_den,lower,upper_num,upper_den,upper,status,sdp_value,spectral_fallback";

Json table_json(const std::vector<KRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"k", r.k},
                       {"lower", rational_json(r.lower)},
                       {"upper", rational_json(r.upper)},
                       {"status", to_string(r.status)},
                       {"threshold", rational_json(r.threshold)},
                       {"sdp_value", r.sdp_value},
                       {"spectral_fallback", r.spectral_fallback},
                       {"bnb_nodes", r.bnb_nodes},
                       {"witness", one_based_json(r.witness)}});
  }
  return arr;
}

Json report_json(const SolveReport& report, bool times) {
  Json trace = Json::array();
  int i = 0;
  for (const auto& step : report.trace) {
    trace.push_back(Json{{"iteration", ++i},
                         {"gamma", rational_json(step.gamma)},
                         {"q", step.q},
                         {"denominator", step.denominator},
                         {"bnb_nodes", step.bnb_nodes},
                         {"ms", shown(step.ms, times)}});
  }
  return Json{{"schema", 1},
              {"method", report.method},
              {"status", to_string(report.status)},
              {"h", rational_json(report.value)},
              {"lower_bound", rational_json(report.lower_bound)},
              {"witness", one_based_json(report.witness)},
              {"candidates", report.candidates},
              {"solved_in_root", report.solved_in_root},
              {"bnb_nodes", report.bnb_nodes},
              {"iterations", report.iterations},
              {"pre_elimination_ms", shown(report.pre_elimination_ms, times)},
              {"total_ms", shown(report.total_ms, times)},
              {"table", table_json(report.table)},
              {"trace", trace}};
}

void write_bounds_csv(std::ostream& out, const std::vector<KRow>& rows) {
  out << kBoundsCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << r.lower.num() << ',' << r.lower.den() << ',' << decimal(r.lower.to_double()) << ','
        << r.upper.num() << ',' << r.upper.den() << ',' << decimal(r.upper.to_double()) << ',' << to_string(r.status)
        << ',' << decimal(r.sdp_value) << ',' << (r.spectral_fallback ? 1 : 0) << '\n';
  }
}

void write_bounds_text(std::ostream& out, const std::vector<KRow>& rows) {
  out << std::left << std::setw(5) << "k" << std::setw(12) << "lower" << std::setw(12) << "upper" << "status\n";
  for (const auto& r : rows)
    out << std::setw(5) << r.k << std::setw(12) << r.lower.to_string() << std::setw(12) << r.upper.to_string()
        << to_string(r.status) << '\n';
}

// ---------------------------------------------------------------------------

int with_errors(Context& ctx, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    *ctx.err << "parse error: " << e.what() << '\n';
  } catch (const GraphError& e) {
    *ctx.err << "invalid graph: " << e.what() << '\n';
  } catch (const std::logic_error& e) {
    *ctx.err << "invalid input: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    *ctx.err << "error: " << e.what() << '\n';
  }
  return kExitInput;
}

int cmd_solve(Context& ctx, const std::string& path, std::optional<int> k, const std::string& trace_path) {
  const auto g = load(path);
  const auto& c = ctx.config;
  if (k) {
    // Exact k-bisection only.
    if (*k < 1 || *k > g.num_vertices() / 2) throw GraphError("--k must lie in [1, n/2]");
    long long cut = 0;
    VertexSubset s;
    long long nodes = 0;
    bool limit = false;
    if (c.method == "brute") {
      auto r = brute_force_bisection(g, *k);
      cut = r.cut;
      s = r.witness;
    } else {
      SaParams sa;
      sa.seed = c.seed;
      auto start = sa_bisection(g, *k, sa);
      auto inst = bisection_to_maxcut(g, *k, start.cut);
      auto mc = maxcut_options(c);
      mc.initial_lb = static_cast<long long>(inst.offset - start.cut);
      auto res = solve_maxcut(inst, mc);
      nodes = res.stats.nodes;
      limit = res.stats.status == BnbStatus::kLimit;
      if (res.stats.status == BnbStatus::kOptimal) {
        s = decode_cut(inst, res.side);
        cut = cut_value(g, s);
      } else {
        s = start.subset;
        cut = start.cut;
      }
    }
    Rational hk(cut, *k);
    auto& out = ctx.sink();
    switch (c.format) {
      case Format::kJson:
        out << Json{{"schema", 1}, {"k", *k}, {"status", limit ? "limit" : "solved"}, {"cut", cut},
                    {"h_k", rational_json(hk)}, {"witness", one_based_json(s)}, {"bnb_nodes", nodes}}
                   .dump(2)
            << '\n';
        break;
      case Format::kCsv:
        out << "k,status,cut,h_k_num,h_k_den,witness,bnb_nodes\n"
            << *k << ',' << (limit ? "limit" : "solved") << ',' << cut << ',' << hk.num() << ',' << hk.den() << ','
            << one_based(s) << ',' << nodes << '\n';
        break;
      case Format::kText:
        out << "h_" << *k << " = " << hk.to_string() << " (cut " << cut << ")" << (limit ? " [limit]" : "") << '\n'
            << "witness " << one_based(s) << '\n';
        break;
    }
    return limit ? kExitLimit : kExitOk;
  }

  auto report = solve_graph(g, c);
  write_report(ctx.sink(), report, c);
  if (!trace_path.empty()) {
    std::ofstream tf(trace_path);
    if (!tf) throw std::runtime_error("cannot write " + trace_path);
    write_trace_csv(tf, report, c.times);
  }
  return report.status == SolveStatus::kSolved ? kExitOk : kExitLimit;
}

int cmd_verify(Context& ctx, const std::string& path, const std::string& lb_text) {
  const auto g = load(path);
  const Rational upsilon = Rational::parse(lb_text);
  auto result = verify_lower_bound(g, upsilon, split_options(ctx.config));
  const char* verdict = !result.decided ? "undecided" : result.valid ? "valid" : "refuted";
  auto& out = ctx.sink();
  std::optional<Rational> cert_ratio;
  if (result.certificate)
    cert_ratio = Rational(cut_value(g, *result.certificate), result.certificate->size());

  switch (ctx.config.format) {
    case Format::kJson: {
      Json j{{"schema", 1}, {"lower_bound", rational_json(upsilon)}, {"result", verdict}};
      if (result.certificate) {
        j["certificate"] = one_based_json(*result.certificate);
        j["certificate_ratio"] = rational_json(*cert_ratio);
      }
      j["report"] = report_json(result.report, ctx.config.times);
      out << j.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << "lower_num,lower_den,result,certificate,certificate_num,certificate_den\n"
          << upsilon.num() << ',' << upsilon.den() << ',' << verdict << ',';
      if (result.certificate)
        out << one_based(*result.certificate) << ',' << cert_ratio->num() << ',' << cert_ratio->den();
      else
        out << ",,";
      out << '\n';
      break;
    case Format::kText:
      out << upsilon.to_string() << ": " << verdict << '\n';
      if (result.certificate)
        out << "certificate " << one_based(*result.certificate) << " ratio " << cert_ratio->to_string() << '\n';
      break;
  }
  if (!result.decided) return kExitLimit;
  return result.valid ? kExitOk : kExitRefuted;
}

int cmd_bounds(Context& ctx, const std::string& path, std::optional<int> k) {
  const auto g = load(path);
  auto table = pre_eliminate(g, split_options(ctx.config));
  auto rows = table.rows;
  if (k) {
    if (*k < 1 || *k > g.num_vertices() / 2) throw GraphError("--k must lie in [1, n/2]");
    rows = {table.rows[static_cast<std::size_t>(*k - 1)]};
  }
  auto& out = ctx.sink();
  switch (ctx.config.format) {
    case Format::kJson:
      out << Json{{"schema", 1},
                  {"best", rational_json(table.best)},
                  {"witness", one_based_json(table.best_witness)},
                  {"elapsed_ms", shown(table.elapsed_ms, ctx.config.times)},
                  {"rows", table_json(rows)}}
                 .dump(2)
          << '\n';
      break;
    case Format::kCsv: write_bounds_csv(out, rows); break;
    case Format::kText: write_bounds_text(out, rows); break;
  }
  return kExitOk;
}

struct GenParams {
  std::string family;
  int size = 0;
  double p = 0.5;
};

int cmd_gen(Context& ctx, const GenParams& gp) {
  Graph g = [&] {
    if (gp.family == "complete") return complete_graph(gp.size);
    if (gp.family == "cycle") return cycle_graph(gp.size);
    if (gp.family == "path") return path_graph(gp.size);
    if (gp.family == "hypercube") return hypercube_graph(gp.size);
    if (gp.family == "star") return star_graph(gp.size);
    return gnp_graph(gp.size, gp.p, ctx.config.seed);
  }();
  write_edge_list(ctx.sink(), g);
  return kExitOk;
}

int cmd_maxcut(Context& ctx, const std::string& path, const std::optional<std::string>& lb, const std::string& trace_path) {
  auto inst = read_instance_file(path);
  auto mc = maxcut_options(ctx.config);
  if (lb) mc.initial_lb = static_cast<long long>(parse_wide(*lb));
  std::ofstream tf;
  if (!trace_path.empty()) {
    tf.open(trace_path);
    if (!tf) throw std::runtime_error("cannot write " + trace_path);
    mc.trace = &tf;
  }
  auto res = solve_maxcut(inst, mc);
  std::string side;
  for (auto b : res.side) side += b ? '1' : '0';
  const bool found = !res.side.empty();
  auto& out = ctx.sink();
  const auto& st = res.stats;
  switch (ctx.config.format) {
    case Format::kJson: {
      Json j{{"schema", 1},
             {"status", to_string(st.status)},
             {"value", found ? Json(to_string(Wide(res.value))) : Json(nullptr)},
             {"upper_bound", st.upper_bound},
             {"root_bound", st.root_bound},
             {"nodes", st.nodes},
             {"max_depth", st.max_depth},
             {"elapsed_ms", shown(st.elapsed_ms, ctx.config.times)},
             {"side", side}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << "status,value,upper_bound,root_bound,nodes,max_depth,elapsed_ms,side\n"
          << to_string(st.status) << ',' << (found ? to_string(Wide(res.value)) : "") << ',' << st.upper_bound << ','
          << decimal(st.root_bound) << ',' << st.nodes << ',' << st.max_depth << ','
          << decimal(shown(st.elapsed_ms, ctx.config.times), 3) << ',' << side << '\n';
      break;
    case Format::kText:
      out << "status " << to_string(st.status) << '\n';
      if (found) out << "value " << to_string(Wide(res.value)) << '\n' << "side " << side << '\n';
      out << "upper bound " << st.upper_bound << '\n' << "nodes " << st.nodes << '\n';
      break;
  }
  return st.status == BnbStatus::kLimit ? kExitLimit : kExitOk;
}

} // namespace

void write_trace_csv(std::ostream& out, const SolveReport& report, bool times) {
  out << "iteration,gamma_num,gamma_den,q,denominator,bnb_nodes,ms\n";
  int i = 0;
  for (const auto& s : report.trace)
    out << ++i << ',' << s.gamma.num() << ',' << s.gamma.den() << ',' << s.q << ',' << s.denominator << ','
        << s.bnb_nodes << ',' << decimal(shown(s.ms, times), 3) << '\n';
}

void write_report(std::ostream& out, const SolveReport& report, const RunConfig& config) {
  const bool t = config.times;
  switch (config.format) {
    case Format::kJson: out << report_json(report, t).dump(2) << '\n'; return;
    case Format::kCsv:
      out << kSolveCsvHeader << '\n'
          << report.method << ',' << to_string(report.status) << ',' << report.value.num() << ','
          << report.value.den() << ',' << decimal(report.value.to_double()) << ',' << report.lower_bound.num() << ','
          << report.lower_bound.den() << ',' << one_based(report.witness) << ',' << report.candidates << ','
          << report.solved_in_root << ',' << report.bnb_nodes << ',' << report.iterations << ','
          << decimal(shown(report.pre_elimination_ms, t), 3) << ',' << decimal(shown(report.total_ms, t), 3) << '\n';
      return;
    case Format::kText: break;
  }
  out << "method          " << report.method << '\n'
      << "status          " << to_string(report.status) << '\n'
      << "h               " << report.value.to_string() << " (" << decimal(report.value.to_double()) << ")\n";
  if (report.status != SolveStatus::kSolved) out << "lower bound     " << report.lower_bound.to_string() << '\n';
  out << "witness         " << one_based(report.witness) << '\n';
  if (report.method == "split-bound") {
    out << "candidates      " << report.candidates << '\n'
        << "solved in root  " << report.solved_in_root << '\n'
        << "bnb nodes       " << report.bnb_nodes << '\n'
        << "pre-elim ms     " << decimal(shown(report.pre_elimination_ms, t), 3) << '\n';
  } else if (report.method == "dinkelbach") {
    out << "iterations      " << report.iterations << '\n'
        << "Q evaluations   " << report.trace.size() << '\n'
        << "bnb nodes       " << report.bnb_nodes << '\n';
  }
  out << "total ms        " << decimal(shown(report.total_ms, t), 3) << '\n';
  if (!report.table.empty()) {
    out << '\n';
    write_bounds_text(out, report.table);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx{RunConfig{}, &out, &err, nullptr};
  auto& c = ctx.config;

  CLI::App app{"Exact edge expansion (Cheeger constant) of small graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  bool no_times = false;
  app.add_option("--time-limit", c.time_limit_seconds, "Seconds per max-cut solve")->check(CLI::PositiveNumber);
  app.add_option("--node-limit", c.node_limit, "Nodes per max-cut solve")->check(CLI::PositiveNumber);
  app.add_option("--workers", c.workers, "Max-cut worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", c.seed, "Seed for annealing, rounding and generators");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", c.out, "Write the report here instead of stdout");
  app.add_flag("--no-times", no_times, "Report all times as 0 for byte-identical output");

  std::string graph_path, trace_path, lb_text;
  std::optional<int> k;

  auto* solve = app.add_subcommand("solve", "Compute h(G)");
  solve->add_option("graph", graph_path, "Edge list or DIMACS file")->required();
  solve->add_option("--method", c.method)->check(CLI::IsMember({"split-bound", "dinkelbach", "brute"}));
  solve->add_option("--k", k, "Only the exact k-bisection h_k");
  solve->add_option("--trace", trace_path, "Dinkelbach iterates as CSV");

  auto* verify = app.add_subcommand("verify", "Check that a value is a lower bound on h(G)");
  verify->add_option("graph", graph_path)->required();
  verify->add_option("--lb", lb_text, "Candidate bound, p/q or decimal")->required();

  auto* bounds = app.add_subcommand("bounds", "Per-size lower and upper bounds");
  bounds->add_option("graph", graph_path)->required();
  bounds->add_option("--k", k, "Single size only");

  GenParams gp;
  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("--family", gp.family)
      ->required()
      ->check(CLI::IsMember({"complete", "cycle", "path", "hypercube", "star", "gnp"}));
  gen->add_option("--n", gp.size, "Vertices; dimension for hypercube, leaves for star")->required();
  gen->add_option("--p", gp.p, "Edge probability for gnp")->check(CLI::Range(0.0, 1.0));

  std::optional<std::string> mc_lb;
  auto* maxcut = app.add_subcommand("maxcut", "Solve a max-cut instance file");
  maxcut->add_option("instance", graph_path)->required();
  maxcut->add_option("--lb", mc_lb, "Only cuts above this value are of interest");
  maxcut->add_option("--trace", trace_path, "Node log as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  c.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText;
  c.times = !no_times;

  return with_errors(ctx, [&] {
    if (*solve) return cmd_solve(ctx, graph_path, k, trace_path);
    if (*verify) return cmd_verify(ctx, graph_path, lb_text);
    if (*bounds) return cmd_bounds(ctx, graph_path, k);
    if (*gen) return cmd_gen(ctx, gp);
    return cmd_maxcut(ctx, graph_path, mc_lb, trace_path);
  });
}

} // namespace cheeger::cli
