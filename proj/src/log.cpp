#include "cheeger/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace cheeger::log {
namespace {

int from_environment() {
  const char* text = std::getenv("CHEEGER_LOG");
  if (!text || !*text) return 1;
  char* end = nullptr;
  long value = std::strtol(text, &end, 10);
  return *end == '\0' ? static_cast<int>(value) : 1;
}

std::atomic<int>& current() {
  static std::atomic<int> value{from_environment()};
  return value;
}

void emit(const char* tag, const std::string& message) {
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  std::cerr << "[" << tag << "] " << message << '\n';
}

} // namespace

int level() { return current().load(); }
void set_level(int level) { current().store(level); }

void warn(const std::string& message) {
  if (level() >= 1) emit("warn", message);
}
void info(const std::string& message) {
  if (level() >= 2) emit("info", message);
}
void debug(const std::string& message) {
  if (level() >= 3) emit("debug", message);
}

} // namespace cheeger::log
