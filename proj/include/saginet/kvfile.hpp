#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "saginet/errors.hpp"

// Line-oriented key-value text format shared by the scenario config,
// serialized scenarios, topology dumps, and decision files:
//
//   # comment
//   [section]
//   key = value
//
// Keys may repeat within a section (ordered lists such as cities or matrix
// rows).  Values are kept verbatim after trimming.

namespace saginet {

struct KvEntry {
  std::string key;
  std::string value;
};

struct KvSection {
  std::string name;
  std::vector<KvEntry> entries;

  const std::string* find(const std::string& key) const {
    for (const auto& e : entries) {
      if (e.key == key) return &e.value;
    }
    return nullptr;
  }

  std::vector<std::string> find_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& e : entries) {
      if (e.key == key) out.push_back(e.value);
    }
    return out;
  }
};

struct KvDocument {
  std::vector<KvSection> sections;

  KvSection* find(const std::string& name) {
    for (auto& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
  const KvSection* find(const std::string& name) const {
    for (const auto& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
  const KvSection& require(const std::string& name) const {
    const KvSection* s = find(name);
    if (!s) throw ConfigError("missing [" + name + "] section");
    return *s;
  }
  KvSection& add(const std::string& name) {
    sections.push_back(KvSection{name, {}});
    return sections.back();
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

inline KvDocument kv_parse(const std::string& text) {
  KvDocument doc;
  doc.add("");  // unnamed preamble section
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      }
      doc.add(detail::trim(t.substr(1, t.size() - 2)));
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    KvEntry e{detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1))};
    if (e.key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    doc.sections.back().entries.push_back(std::move(e));
  }
  return doc;
}

inline KvDocument kv_load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return kv_parse(buf.str());
}

inline std::string kv_dump(const KvDocument& doc) {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : doc.sections) {
    if (s.name.empty() && s.entries.empty()) continue;
    if (!first) out << "\n";
    first = false;
    if (!s.name.empty()) out << "[" << s.name << "]\n";
    for (const auto& e : s.entries) out << e.key << " = " << e.value << "\n";
  }
  return out.str();
}

inline void kv_save(const KvDocument& doc, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << kv_dump(doc);
}

// ---- typed value helpers ----

inline double kv_double(const std::string& v, const std::string& what) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') throw ConfigError(what + ": bad number '" + v + "'");
  return x;
}

inline long long kv_int(const std::string& v, const std::string& what) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') throw ConfigError(what + ": bad integer '" + v + "'");
  return x;
}

inline bool kv_bool(const std::string& v, const std::string& what) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(what + ": bad boolean '" + v + "'");
}

/// Shortest decimal form that parses back to the same double.  Keeps
/// serialized scenarios byte-stable and round-trip exact.
inline std::string format_double(double x) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Fixed scientific form for matrix dumps.
inline std::string format_scientific(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", x);
  return buf;
}

inline std::vector<std::string> split_fields(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(detail::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(detail::trim(cur));
  return out;
}

/// Whitespace-separated tokens (matrix rows, decision vectors).
inline std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace saginet
