#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "cheeger/report.hpp"

namespace cheeger::cli {

enum class Format { kText, kCsv, kJson };

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitLimit = 3;

struct RunConfig {
  std::string method = "split-bound";
  double time_limit_seconds = 3600.0;
  long long node_limit = 1000000;
  int workers = 1;
  std::uint64_t seed = 0;
  Format format = Format::kText;
  std::string out;
  /// Report times as 0 so repeated runs are byte-identical.
  bool times = true;
};

/// Renders a solve report. Witness vertices are 1-based as in the graph files.
void write_report(std::ostream& out, const SolveReport& report, const RunConfig& config);

/// Dinkelbach iterates: iteration,gamma_num,gamma_den,q,denominator,bnb_nodes,ms
void write_trace_csv(std::ostream& out, const SolveReport& report, bool times);

/// Entry point behind the `cheeger` binary. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cheeger::cli
