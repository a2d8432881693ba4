#include "grainsched/log.hpp"

#include <cstdarg>
#include <cstdlib>
#include <cstring>

namespace grainsched {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("GRAINSCHED_LOG");
    if (!env) return LogLevel::Error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_level());
}

void log_write(LogLevel level, const char* fmt, ...) {
  const char* tag = level == LogLevel::Error ? "error" : level == LogLevel::Info ? "info" : "debug";
  std::fprintf(stderr, "[grainsched %s] ", tag);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace grainsched
