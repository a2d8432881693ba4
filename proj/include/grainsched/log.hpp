#pragma once

#include <cstdio>

namespace grainsched {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Level comes from GRAINSCHED_LOG (error|info|debug), read once. Unknown
// values fall back to error.
LogLevel log_level();

bool log_enabled(LogLevel level);
void log_write(LogLevel level, const char* fmt, ...);

}  // namespace grainsched

#define GS_LOG_ERROR(...)                                             \
  do {                                                                \
    ::grainsched::log_write(::grainsched::LogLevel::Error, __VA_ARGS__); \
  } while (0)
#define GS_LOG_INFO(...)                                                  \
  do {                                                                    \
    if (::grainsched::log_enabled(::grainsched::LogLevel::Info))          \
      ::grainsched::log_write(::grainsched::LogLevel::Info, __VA_ARGS__); \
  } while (0)
#define GS_LOG_DEBUG(...)                                                  \
  do {                                                                     \
    if (::grainsched::log_enabled(::grainsched::LogLevel::Debug))          \
      ::grainsched::log_write(::grainsched::LogLevel::Debug, __VA_ARGS__); \
  } while (0)
