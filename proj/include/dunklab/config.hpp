#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dunklab/common.hpp"

namespace dunklab {

// Parser for the TOML subset the experiment configs use: [section] headers,
// key = value with integer / float / bool / "string" / flat arrays of
// numbers or strings, and # comments.  Multi-line arrays are supported;
// nested tables and dotted keys are not.
class Config {
 public:
  using Value = std::variant<long long, double, bool, std::string,
                             std::vector<double>, std::vector<std::string>>;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_double_array(const std::string& key,
                                       const std::vector<double>& fallback) const;

  long long require_int(const std::string& key) const;
  double require_double(const std::string& key) const;
  std::string require_string(const std::string& key) const;
  std::vector<double> require_double_array(const std::string& key) const;

  void set(const std::string& key, Value v) { values_[key] = std::move(v); }

  const std::map<std::string, Value>& values() const { return values_; }

 private:
  const Value* find(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;

  std::map<std::string, Value> values_;
  std::string origin_;
};

}  // namespace dunklab
