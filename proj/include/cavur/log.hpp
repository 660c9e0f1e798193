#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace cavur::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Log threshold comes from the CAVUR_LOG environment variable
// (error|warn|info|debug). Default: warn.
inline Level threshold() {
  static const Level value = [] {
    const char* env = std::getenv("CAVUR_LOG");
    if (env == nullptr) return Level::warn;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "info") == 0) return Level::info;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::warn;
  }();
  return value;
}

inline void message(Level level, const std::string& text) {
  if (level > threshold()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[cavur:%s] %s\n", names[static_cast<int>(level)],
               text.c_str());
}

inline void warn(const std::string& text) { message(Level::warn, text); }
inline void info(const std::string& text) { message(Level::info, text); }
inline void debug(const std::string& text) { message(Level::debug, text); }

}  // namespace cavur::log
