#include "uwbrp/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace uwbrp::log {

namespace {

Level parse_env() {
  const char* env = std::getenv("UWB_RELPOSE_LOG");
  if (env == nullptr) {
    return Level::Warn;
  }
  const std::string v(env);
  if (v == "off") return Level::Off;
  if (v == "error") return Level::Error;
  if (v == "warn") return Level::Warn;
  if (v == "info") return Level::Info;
  if (v == "debug") return Level::Debug;
  return Level::Warn;
}

Level& current() {
  static Level level = parse_env();
  return level;
}

const char* tag(Level level) {
  switch (level) {
    case Level::Error:
      return "error";
    case Level::Warn:
      return "warn";
    case Level::Info:
      return "info";
    case Level::Debug:
      return "debug";
    default:
      return "";
  }
}

}  // namespace

Level level() { return current(); }

void set_level(Level level) { current() = level; }

void message(Level level, const std::string& text) {
  if (level == Level::Off || static_cast<int>(level) > static_cast<int>(current())) {
    return;
  }
  std::fprintf(stderr, "[uwb-relpose %s] %s\n", tag(level), text.c_str());
}

}  // namespace uwbrp::log
