#include "semifore/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace semifore {
namespace {

LogLevel g_threshold = LogLevel::kWarn;
std::once_flag g_init_once;
std::mutex g_write_mutex;

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::kError: return "error";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kInfo: return "info";
    case LogLevel::kDebug: return "debug";
  }
  return "?";
}

void init_from_env() {
  const char* env = std::getenv("SEMIFORE_LOG");
  if (env == nullptr) return;
  if (std::strcmp(env, "error") == 0) g_threshold = LogLevel::kError;
  else if (std::strcmp(env, "warn") == 0) g_threshold = LogLevel::kWarn;
  else if (std::strcmp(env, "info") == 0) g_threshold = LogLevel::kInfo;
  else if (std::strcmp(env, "debug") == 0) g_threshold = LogLevel::kDebug;
  else std::fprintf(stderr, "[warn] unknown SEMIFORE_LOG value '%s'\n", env);
}

}  // namespace

LogLevel log_threshold() {
  std::call_once(g_init_once, init_from_env);
  return g_threshold;
}

void set_log_threshold(LogLevel level) {
  std::call_once(g_init_once, init_from_env);
  g_threshold = level;
}

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
  std::lock_guard<std::mutex> lock(g_write_mutex);
  std::fprintf(stderr, "[%s] %s\n", level_tag(level), message.c_str());
}

}  // namespace semifore
