#pragma once

#include "latslice/exact/rational.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latslice {

/// A configuration problem; `field` names the offending key.
struct ConfigError : std::invalid_argument {
  std::string field;
  ConfigError(std::string f, const std::string& what) : std::invalid_argument(f + ": " + what), field(std::move(f)) {}
};

/// Everything one CLI invocation needs. Empty lists mean "use the scalar value".
struct ExperimentConfig {
  std::string command;
  std::string target;  // check id for check / sweep / fuzz
  std::string family = "cube";
  long n = 3;
  long k = 1;
  long h = 1;
  long m = 2;
  long s = 6;
  long R = 3;
  std::vector<long> k_range;
  std::vector<long> h_range;
  std::vector<long> m_range;
  std::vector<long> r_list;
  std::string lattice;    // basis vectors separated by ';', entries by ','; empty = Z^n
  std::string normal;     // integer vector
  std::string level;      // integer; empty = scan all levels
  std::string translate;  // rational vector
  std::string matrix;     // rows separated by ';'
  long normal_bound = 3;
  long dim_cap = 6;
  std::optional<std::uint64_t> seed;
  long budget = 100;
  long top = 10;
  std::string out;
  std::string format = "json";
  long jobs = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline long parse_long(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  }
}

inline std::uint64_t parse_u64(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
}

}  // namespace detail

/// "a..b" or "a,b,c" (or a single value). Ranges are inclusive and must be finite.
inline std::vector<long> parse_long_list(const std::string& field, const std::string& text) {
  std::string t = detail::trim(text);
  if (t.empty()) return {};
  auto dots = t.find("..");
  if (dots != std::string::npos) {
    long a = detail::parse_long(field, detail::trim(t.substr(0, dots)));
    long b = detail::parse_long(field, detail::trim(t.substr(dots + 2)));
    if (b < a) throw ConfigError(field, "empty range '" + t + "'");
    if (b - a > 1000000) throw ConfigError(field, "range too long '" + t + "'");
    std::vector<long> out;
    for (long x = a; x <= b; ++x) out.push_back(x);
    return out;
  }
  std::vector<long> out;
  for (const auto& part : detail::split(t, ',')) out.push_back(detail::parse_long(field, part));
  return out;
}

inline std::string format_long_list(const std::vector<long>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

namespace detail {

struct ConfigField {
  const char* key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

inline const std::vector<ConfigField>& config_fields() {
  using C = ExperimentConfig;
  auto str = [](std::string C::*p, const char* key) {
    return ConfigField{key, [p](const C& c) { return c.*p; }, [p](C& c, const std::string& v) { c.*p = v; }};
  };
  auto num = [](long C::*p, const char* key) {
    return ConfigField{key, [p](const C& c) { return std::to_string(c.*p); },
                       [p, key](C& c, const std::string& v) { c.*p = parse_long(key, v); }};
  };
  auto list = [](std::vector<long> C::*p, const char* key) {
    return ConfigField{key, [p](const C& c) { return format_long_list(c.*p); },
                       [p, key](C& c, const std::string& v) { c.*p = parse_long_list(key, v); }};
  };
  static const std::vector<ConfigField> fields = {
      str(&C::command, "command"),
      str(&C::target, "target"),
      str(&C::family, "family"),
      num(&C::n, "n"),
      num(&C::k, "k"),
      num(&C::h, "h"),
      num(&C::m, "m"),
      num(&C::s, "s"),
      num(&C::R, "R"),
      list(&C::k_range, "k_range"),
      list(&C::h_range, "h_range"),
      list(&C::m_range, "m_range"),
      list(&C::r_list, "r"),
      str(&C::lattice, "lattice"),
      str(&C::normal, "normal"),
      str(&C::level, "level"),
      str(&C::translate, "translate"),
      str(&C::matrix, "matrix"),
      num(&C::normal_bound, "normal_bound"),
      num(&C::dim_cap, "dim_cap"),
      ConfigField{"seed", [](const C& c) { return c.seed ? std::to_string(*c.seed) : std::string(); },
                  [](C& c, const std::string& v) {
                    if (v.empty())
                      c.seed.reset();
                    else
                      c.seed = parse_u64("seed", v);
                  }},
      num(&C::budget, "budget"),
      num(&C::top, "top"),
      str(&C::out, "out"),
      str(&C::format, "format"),
      num(&C::jobs, "jobs"),
  };
  return fields;
}

}  // namespace detail

inline void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  for (const auto& f : detail::config_fields())
    if (key == f.key) {
      f.set(c, detail::trim(value));
      return;
    }
  throw ConfigError(key, "unknown configuration key");
}

/// Flat "key = value" text, one key per line in a fixed order.
inline std::string serialize(const ExperimentConfig& c) {
  std::string out;
  for (const auto& f : detail::config_fields()) out += std::string(f.key) + " = " + f.get(c) + "\n";
  return out;
}

/// Parses "key = value" lines on top of `base`; '#' starts a comment line.
inline ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {}) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + t + "'");
    set_config_value(base, detail::trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return base;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace latslice
