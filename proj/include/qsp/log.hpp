#pragma once

#include <string>

namespace qsp {

enum class LogLevel { quiet, warn, info };

void set_log_level(LogLevel level);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);

}  // namespace qsp
