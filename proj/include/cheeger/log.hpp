#pragma once

#include <string>

namespace cheeger::log {

/// Verbosity from the CHEEGER_LOG environment variable:
/// 0 silent, 1 warnings (default), 2 progress, 3 debug.
int level();
void set_level(int level);

void warn(const std::string& message);
void info(const std::string& message);
void debug(const std::string& message);

} // namespace cheeger::log
