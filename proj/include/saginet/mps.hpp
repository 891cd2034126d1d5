#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "saginet/errors.hpp"
#include "saginet/kvfile.hpp"
#include "saginet/milp.hpp"

namespace saginet {

namespace detail {

/// Shortest representation that round-trips within the 12-character MPS
/// value field; falls back to %.6e when no such form exists.
inline std::string mps_number(double x) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strlen(buf) <= 12 && std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.6e", x);
  return buf;
}

inline std::string mps_sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'
               ? c
               : '_';
  }
  return out;
}

/// MPS names are capped at eight characters.  Keep the original when it
/// fits and is unique, otherwise fall back to a numbered name; a clash on
/// the fallback namespace is unresolvable.
inline std::string mps_assign_name(const std::string& base, char prefix, int index,
                                   std::set<std::string>& used) {
  std::string cand = mps_sanitize(base).substr(0, 8);
  if (!cand.empty() && used.insert(cand).second) return cand;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%07d", prefix, index);
  std::string fallback(buf);
  if (!used.insert(fallback).second) {
    throw NameCollisionError("mps: cannot derive a unique 8-character name for '" + base + "'");
  }
  return fallback;
}

inline void mps_entry(std::string& out, const std::string& f2, const std::string& f3,
                      const std::string& f4) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "    %-8s  %-8s  %s\n", f2.c_str(), f3.c_str(), f4.c_str());
  out += buf;
}

}  // namespace detail

inline std::string export_mps(const MilpModel& model) {
  if (model.objective.size() != model.variables.size()) {
    throw DimensionMismatchError("mps: objective length does not match variable count");
  }
  std::set<std::string> used;
  const std::string obj_row = detail::mps_assign_name("OBJ", 'R', 0, used);
  std::vector<std::string> row_names;
  row_names.reserve(model.constraints.size());
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    row_names.push_back(
        detail::mps_assign_name(model.constraints[i].name, 'R', static_cast<int>(i) + 1, used));
  }
  std::vector<std::string> var_names;
  var_names.reserve(model.variables.size());
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    var_names.push_back(
        detail::mps_assign_name(model.variables[j].name, 'X', static_cast<int>(j), used));
  }

  // Column-major coefficient lists: objective first, then rows in order.
  std::vector<std::vector<std::pair<int, double>>> cols(model.variables.size());
  for (std::size_t j = 0; j < model.objective.size(); ++j) {
    if (model.objective[j] != 0.0) cols[j].push_back({-1, model.objective[j]});
  }
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    std::map<int, double> acc;
    for (const auto& [j, c] : model.constraints[i].terms) acc[j] += c;
    for (const auto& [j, c] : acc) {
      if (c != 0.0) cols[j].push_back({static_cast<int>(i), c});
    }
  }

  std::string out;
  out += "NAME          " + detail::mps_sanitize(model.name) + "\n";
  out += "OBJSENSE\n";
  out += model.maximize ? "    MAX\n" : "    MIN\n";
  out += "ROWS\n";
  out += " N  " + obj_row + "\n";
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const char t = model.constraints[i].rel == Rel::LessEq
                       ? 'L'
                       : (model.constraints[i].rel == Rel::Eq ? 'E' : 'G');
    out += std::string(" ") + t + "  " + row_names[i] + "\n";
  }
  out += "COLUMNS\n";
  bool in_int = false;
  int marker_id = 0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const bool want_int = model.variables[j].kind != VarKind::Continuous;
    if (want_int != in_int) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "    M%-7d  %-8s                 %s\n", marker_id++,
                    "'MARKER'", want_int ? "'INTORG'" : "'INTEND'");
      out += buf;
      in_int = want_int;
    }
    for (const auto& [row, c] : cols[j]) {
      detail::mps_entry(out, var_names[j], row < 0 ? obj_row : row_names[row],
                        detail::mps_number(c));
    }
    if (cols[j].empty()) {
      // A variable absent from COLUMNS would vanish; pin it with a zero
      // objective entry.
      detail::mps_entry(out, var_names[j], obj_row, "0");
    }
  }
  if (in_int) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "    M%-7d  %-8s                 %s\n", marker_id++,
                  "'MARKER'", "'INTEND'");
    out += buf;
  }
  out += "RHS\n";
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    if (model.constraints[i].rhs != 0.0) {
      detail::mps_entry(out, "RHS", row_names[i], detail::mps_number(model.constraints[i].rhs));
    }
  }
  out += "BOUNDS\n";
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const MilpVariable& v = model.variables[j];
    char buf[96];
    if (v.kind == VarKind::Binary) {
      std::snprintf(buf, sizeof(buf), " BV %-8s  %-8s\n", "BND", var_names[j].c_str());
      out += buf;
      continue;
    }
    const bool lo_inf = !std::isfinite(v.lower);
    const bool up_inf = !std::isfinite(v.upper);
    if (lo_inf && up_inf) {
      std::snprintf(buf, sizeof(buf), " FR %-8s  %-8s\n", "BND", var_names[j].c_str());
      out += buf;
      continue;
    }
    if (!lo_inf && !up_inf && v.lower == v.upper) {
      std::snprintf(buf, sizeof(buf), " FX %-8s  %-8s  %s\n", "BND", var_names[j].c_str(),
                    detail::mps_number(v.lower).c_str());
      out += buf;
      continue;
    }
    if (lo_inf) {
      std::snprintf(buf, sizeof(buf), " MI %-8s  %-8s\n", "BND", var_names[j].c_str());
      out += buf;
    } else if (v.lower != 0.0 || v.kind == VarKind::Integer) {
      std::snprintf(buf, sizeof(buf), " LO %-8s  %-8s  %s\n", "BND", var_names[j].c_str(),
                    detail::mps_number(v.lower).c_str());
      out += buf;
    }
    if (up_inf) {
      if (v.kind == VarKind::Integer) {
        std::snprintf(buf, sizeof(buf), " PL %-8s  %-8s\n", "BND", var_names[j].c_str());
        out += buf;
      }
    } else {
      std::snprintf(buf, sizeof(buf), " UP %-8s  %-8s  %s\n", "BND", var_names[j].c_str(),
                    detail::mps_number(v.upper).c_str());
      out += buf;
    }
  }
  out += "ENDATA\n";
  return out;
}

inline void save_mps(const MilpModel& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f << export_mps(model);
}

inline MilpModel import_mps_text(const std::string& text) {
  MilpModel model;
  model.maximize = false;  // MPS default sense
  std::map<std::string, int> row_index;
  std::string obj_row;
  std::map<std::string, int> var_index;
  bool in_int = false;
  bool pending_objsense = false;

  enum Section { kNone, kRows, kColumns, kRhs, kRanges, kBounds, kDone };
  Section section = kNone;

  auto parse_num = [](const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw InvalidSpecError("mps: bad numeric field '" + tok + "'");
    }
    return v;
  };
  auto find_row = [&](const std::string& name) {
    auto it = row_index.find(name);
    if (it == row_index.end() && name != obj_row) {
      throw InvalidSpecError("mps: unknown row '" + name + "'");
    }
    return it == row_index.end() ? -1 : it->second;
  };
  auto ensure_var = [&](const std::string& name) {
    auto it = var_index.find(name);
    if (it != var_index.end()) return it->second;
    const int j = model.add_variable(name, in_int ? VarKind::Integer : VarKind::Continuous, 0.0,
                                     kLpInfinity);
    var_index.emplace(name, j);
    return j;
  };

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    const std::vector<std::string> tok = split_tokens(line);
    if (tok.empty()) continue;

    const bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    if (is_header) {
      pending_objsense = false;
      if (tok[0] == "NAME") {
        model.name = tok.size() > 1 ? tok[1] : "model";
      } else if (tok[0] == "OBJSENSE") {
        if (tok.size() > 1) {
          model.maximize = tok[1] == "MAX" || tok[1] == "MAXIMIZE";
        } else {
          pending_objsense = true;
        }
      } else if (tok[0] == "ROWS") {
        section = kRows;
      } else if (tok[0] == "COLUMNS") {
        section = kColumns;
      } else if (tok[0] == "RHS") {
        section = kRhs;
      } else if (tok[0] == "RANGES") {
        section = kRanges;
      } else if (tok[0] == "BOUNDS") {
        section = kBounds;
      } else if (tok[0] == "ENDATA") {
        section = kDone;
        break;
      } else {
        throw InvalidSpecError("mps: unknown section '" + tok[0] + "'");
      }
      continue;
    }

    if (pending_objsense) {
      model.maximize = tok[0] == "MAX" || tok[0] == "MAXIMIZE";
      pending_objsense = false;
      continue;
    }
    switch (section) {
      case kRows: {
        if (tok.size() != 2) throw InvalidSpecError("mps: malformed ROWS line");
        if (tok[0] == "N") {
          if (obj_row.empty()) obj_row = tok[1];
        } else if (tok[0] == "L" || tok[0] == "G" || tok[0] == "E") {
          if (row_index.count(tok[1])) {
            throw NameCollisionError("mps: duplicate row '" + tok[1] + "'");
          }
          row_index.emplace(tok[1], static_cast<int>(model.constraints.size()));
          model.add_constraint(tok[1], {},
                               tok[0] == "L" ? Rel::LessEq
                                             : (tok[0] == "E" ? Rel::Eq : Rel::GreaterEq),
                               0.0);
        } else {
          throw InvalidSpecError("mps: unknown row type '" + tok[0] + "'");
        }
        break;
      }
      case kColumns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          if (tok[2] == "'INTORG'") {
            in_int = true;
          } else if (tok[2] == "'INTEND'") {
            in_int = false;
          } else {
            throw InvalidSpecError("mps: unknown marker '" + tok[2] + "'");
          }
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) {
          throw InvalidSpecError("mps: malformed COLUMNS line");
        }
        const int j = ensure_var(tok[0]);
        for (std::size_t f = 1; f + 1 < tok.size(); f += 2) {
          const double c = parse_num(tok[f + 1]);
          const int r = find_row(tok[f]);
          if (r < 0) {
            model.objective[j] += c;
          } else {
            model.constraints[r].terms.push_back({j, c});
          }
        }
        break;
      }
      case kRhs: {
        if (tok.size() != 3 && tok.size() != 5) throw InvalidSpecError("mps: malformed RHS line");
        for (std::size_t f = 1; f + 1 < tok.size(); f += 2) {
          const int r = find_row(tok[f]);
          if (r >= 0) model.constraints[r].rhs = parse_num(tok[f + 1]);
        }
        break;
      }
      case kRanges:
        throw InvalidSpecError("mps: RANGES sections are not supported");
      case kBounds: {
        if (tok.size() < 3) throw InvalidSpecError("mps: malformed BOUNDS line");
        auto it = var_index.find(tok[2]);
        if (it == var_index.end()) throw InvalidSpecError("mps: bound on unknown column '" + tok[2] + "'");
        MilpVariable& v = model.variables[it->second];
        const std::string& bt = tok[0];
        auto need_value = [&]() {
          if (tok.size() < 4) throw InvalidSpecError("mps: bound type " + bt + " needs a value");
          return parse_num(tok[3]);
        };
        if (bt == "BV") {
          v.kind = VarKind::Binary;
          v.lower = 0.0;
          v.upper = 1.0;
        } else if (bt == "UP") {
          v.upper = need_value();
        } else if (bt == "LO") {
          v.lower = need_value();
        } else if (bt == "FX") {
          v.lower = v.upper = need_value();
        } else if (bt == "FR") {
          v.lower = -kLpInfinity;
          v.upper = kLpInfinity;
        } else if (bt == "MI") {
          v.lower = -kLpInfinity;
        } else if (bt == "PL") {
          v.upper = kLpInfinity;
        } else if (bt == "UI") {
          v.kind = VarKind::Integer;
          v.upper = need_value();
        } else if (bt == "LI") {
          v.kind = VarKind::Integer;
          v.lower = need_value();
        } else {
          throw InvalidSpecError("mps: unknown bound type '" + bt + "'");
        }
        break;
      }
      case kNone:
        throw InvalidSpecError("mps: data line before any section header");
      case kDone:
        break;
    }
  }
  if (section != kDone) throw InvalidSpecError("mps: missing ENDATA");
  if (obj_row.empty()) throw InvalidSpecError("mps: no objective row");
  return model;
}

inline MilpModel load_mps(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return import_mps_text(ss.str());
}

}  // namespace saginet
