#include "qsp/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace qsp {

namespace {
std::atomic<LogLevel> g_level{LogLevel::warn};
std::mutex g_mu;
}  // namespace

void set_log_level(LogLevel level) { g_level = level; }

void log_warn(const std::string& msg) {
  if (g_level.load() == LogLevel::quiet) return;
  std::lock_guard lock(g_mu);
  std::cerr << "warning: " << msg << '\n';
}

void log_info(const std::string& msg) {
  if (g_level.load() != LogLevel::info) return;
  std::lock_guard lock(g_mu);
  std::cerr << msg << '\n';
}

}  // namespace qsp
