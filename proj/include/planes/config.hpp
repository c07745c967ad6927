#pragma once

#include <fstream>
#include <map>
#include <string>

#include "planes/znn.hpp"

// Plain-text key=value configuration files; '#' starts a comment, blank
// lines are ignored, whitespace around keys and values is trimmed.

namespace planes {

inline std::map<std::string, std::string> parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config '" + path + "'");
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
  };
  std::map<std::string, std::string> cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw input_error("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw input_error("config line " + std::to_string(lineno) + ": empty key");
    cfg[key] = trim(t.substr(eq + 1));
  }
  return cfg;
}

}  // namespace planes
