#pragma once

#include <string>

namespace uwbrp::log {

enum class Level { Off = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

// Current level; initialized once from the UWB_RELPOSE_LOG environment
// variable (off|error|warn|info|debug), default warn.
Level level();
void set_level(Level level);

void message(Level level, const std::string& text);

inline void error(const std::string& text) { message(Level::Error, text); }
inline void warn(const std::string& text) { message(Level::Warn, text); }
inline void info(const std::string& text) { message(Level::Info, text); }
inline void debug(const std::string& text) { message(Level::Debug, text); }

}  // namespace uwbrp::log
