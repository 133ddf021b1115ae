#include "dunklab/config.hpp"

#include <cctype>
#include <cstdlib>

#include "dunklab/csv.hpp"

namespace dunklab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Strip a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

bool parse_number(const std::string& tok, long long* i, double* d, bool* is_int) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long long iv = std::strtoll(tok.c_str(), &end, 10);
  if (errno == 0 && end && *end == '\0') {
    *i = iv;
    *is_int = true;
    return true;
  }
  errno = 0;
  const double dv = std::strtod(tok.c_str(), &end);
  if (errno == 0 && end && *end == '\0') {
    *d = dv;
    *is_int = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_array(const std::string& body,
                                     const std::string& where) {
  std::vector<std::string> out;
  std::string cur;
  bool in_str = false;
  for (char c : body) {
    if (c == '"') in_str = !in_str;
    if (c == ',' && !in_str) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  const std::string last = trim(cur);
  if (!last.empty()) out.push_back(last);
  if (in_str) throw ConfigError(where + ": unterminated string in array");
  return out;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  return parse_string(read_text_file(path), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string section;
  std::string pending;  // multi-line array accumulation
  std::string pending_key;
  int lineno = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string raw = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string line = trim(strip_comment(raw));

    if (!pending_key.empty()) {
      pending += " " + line;
      if (line.find(']') == std::string::npos) continue;
      line = pending_key + " = " + pending;
      pending_key.clear();
      pending.clear();
    }
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");

    if (!value.empty() && value.front() == '[' &&
        value.find(']') == std::string::npos) {
      pending_key = key;
      pending = value;
      continue;
    }

    const std::string full = section.empty() ? key : section + "." + key;

    if (value.empty()) throw ConfigError(where + ": empty value for " + key);

    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"')
        throw ConfigError(where + ": unterminated string");
      cfg.values_[full] = value.substr(1, value.size() - 2);
      continue;
    }
    if (value == "true" || value == "false") {
      cfg.values_[full] = (value == "true");
      continue;
    }
    if (value.front() == '[') {
      if (value.back() != ']') throw ConfigError(where + ": unterminated array");
      const auto items = split_array(value.substr(1, value.size() - 2), where);
      bool all_numeric = true;
      for (const auto& it : items)
        if (!it.empty() && it.front() == '"') all_numeric = false;
      if (all_numeric) {
        std::vector<double> arr;
        for (const auto& it : items) {
          long long iv;
          double dv;
          bool is_int;
          if (!parse_number(it, &iv, &dv, &is_int))
            throw ConfigError(where + ": bad array element '" + it + "'");
          arr.push_back(is_int ? static_cast<double>(iv) : dv);
        }
        cfg.values_[full] = std::move(arr);
      } else {
        std::vector<std::string> arr;
        for (const auto& it : items) {
          if (it.size() < 2 || it.front() != '"' || it.back() != '"')
            throw ConfigError(where + ": bad string array element '" + it + "'");
          arr.push_back(it.substr(1, it.size() - 2));
        }
        cfg.values_[full] = std::move(arr);
      }
      continue;
    }
    long long iv;
    double dv;
    bool is_int;
    if (!parse_number(value, &iv, &dv, &is_int))
      throw ConfigError(where + ": cannot parse value '" + value + "'");
    if (is_int)
      cfg.values_[full] = iv;
    else
      cfg.values_[full] = dv;
  }
  if (!pending_key.empty())
    throw ConfigError(origin + ": unterminated multi-line array for " + pending_key);
  return cfg;
}

const Config::Value* Config::find(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

void Config::fail(const std::string& key, const std::string& why) const {
  throw ConfigError(origin_ + ": key '" + key + "' " + why);
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

long long Config::get_int(const std::string& key, long long fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (const auto* i = std::get_if<long long>(v)) return *i;
  fail(key, "is not an integer");
}

double Config::get_double(const std::string& key, double fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<long long>(v)) return static_cast<double>(*i);
  fail(key, "is not a number");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (const auto* b = std::get_if<bool>(v)) return *b;
  fail(key, "is not a boolean");
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  fail(key, "is not a string");
}

std::vector<double> Config::get_double_array(
    const std::string& key, const std::vector<double>& fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (const auto* a = std::get_if<std::vector<double>>(v)) return *a;
  if (const auto* d = std::get_if<double>(v)) return {*d};
  if (const auto* i = std::get_if<long long>(v))
    return {static_cast<double>(*i)};
  fail(key, "is not a numeric array");
}

long long Config::require_int(const std::string& key) const {
  if (!has(key)) fail(key, "is required");
  return get_int(key, 0);
}

double Config::require_double(const std::string& key) const {
  if (!has(key)) fail(key, "is required");
  return get_double(key, 0);
}

std::string Config::require_string(const std::string& key) const {
  if (!has(key)) fail(key, "is required");
  return get_string(key, "");
}

std::vector<double> Config::require_double_array(const std::string& key) const {
  if (!has(key)) fail(key, "is required");
  return get_double_array(key, {});
}

}  // namespace dunklab
