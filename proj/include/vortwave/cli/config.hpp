#ifndef VORTWAVE_CLI_CONFIG_HPP
#define VORTWAVE_CLI_CONFIG_HPP

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/errors.hpp"

namespace vortwave::cli {

// Bad invocation: unknown command, missing or malformed parameter.
class UsageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Flat key = value text with optional [section] headers. Keys are looked up
/// by bare name, so a key may appear only once in the whole file.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text, const std::string& origin = "<config>") {
    RunConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw UsageError(where(origin, lineno) + "unterminated section header");
        section = detail::trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw UsageError(where(origin, lineno) + "expected key = value");
      const std::string key = detail::trim(line.substr(0, eq));
      const std::string value = detail::trim(line.substr(eq + 1));
      if (key.empty()) throw UsageError(where(origin, lineno) + "empty key");
      if (cfg.values_.count(key)) throw UsageError(where(origin, lineno) + "duplicate key '" + key + "'");
      cfg.values_[key] = value;
      cfg.order_.push_back({section, key});
    }
    return cfg;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    auto cfg = parse(buf.str(), path);
    const auto slash = path.find_last_of('/');
    cfg.directory_ = slash == std::string::npos ? "." : path.substr(0, slash);
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  const std::string& text(const std::string& key) const {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) throw UsageError("missing parameter '" + key + "'");
    return it->second;
  }

  std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  double number(const std::string& key) const {
    const std::string& v = text(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end == v.c_str() || *end != '\0' || !std::isfinite(x)) {
      throw UsageError("parameter '" + key + "' must be a finite number, got '" + v + "'");
    }
    return x;
  }

  double number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  long integer_or(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const double x = number(key);
    if (x != std::floor(x)) throw UsageError("parameter '" + key + "' must be an integer");
    return static_cast<long>(x);
  }

  bool flag_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = text(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw UsageError("parameter '" + key + "' must be true or false, got '" + v + "'");
  }

  /// Keys in file order with their sections.
  const std::vector<std::pair<std::string, std::string>>& order() const { return order_; }
  const std::map<std::string, std::string>& values() const { return values_; }
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [section, key] : order_) {
      if (!used_.count(key)) out.push_back(key);
    }
    return out;
  }
  const std::string& directory() const { return directory_; }
  const std::string& origin() const { return origin_; }

 private:
  static std::string where(const std::string& origin, int line) {
    return origin + ":" + std::to_string(line) + ": ";
  }

  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, std::string>> order_;
  mutable std::set<std::string> used_;
  std::string directory_ = ".";
  std::string origin_;
};

}  // namespace vortwave::cli

#endif  // VORTWAVE_CLI_CONFIG_HPP
