#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "saginet/channel.hpp"
#include "saginet/errors.hpp"
#include "saginet/geo.hpp"
#include "saginet/kvfile.hpp"
#include "saginet/scenario.hpp"

namespace saginet {

struct TopologyOptions {
  double earth_radius_m = kEarthMeanRadiusM;
  /// When set, the occlusion test applies to the chord between the two
  /// endpoints instead of the infinite line through them.
  bool segment_check = false;
};

/// Bipartite AP/user visibility graph with per-link amplitude weights.
/// Columns follow the canonical user order (comm, sensing, charge).
/// `weights` is masked by `adjacency`; `full_weights` keeps every
/// geometrically unobstructed link, including ones pruned as too weak,
/// since those still leak interference.
struct TopologyGraph {
  int num_aps = 0;
  int num_comm = 0;
  bool has_sensing = false;
  int num_charge = 0;
  std::vector<std::uint8_t> adjacency;
  std::vector<double> weights;
  std::vector<double> full_weights;

  int num_users() const { return num_comm + (has_sensing ? 1 : 0) + num_charge; }
  int sensing_col() const { return has_sensing ? num_comm : -1; }
  int charge_col0() const { return num_comm + (has_sensing ? 1 : 0); }

  std::size_t at(int m, int k) const {
    return static_cast<std::size_t>(m) * num_users() + k;
  }
  bool adj(int m, int k) const { return adjacency[at(m, k)] != 0; }
  double w(int m, int k) const { return weights[at(m, k)]; }
  double w_full(int m, int k) const { return full_weights[at(m, k)]; }
};

/// Ground link test: the AP must sit above the elevation mask at the user.
inline bool edge_terrestrial(const EcefPosition& ap, const GeodeticPosition& user,
                             const RadioParams& radio,
                             const EllipsoidParams& ell = EllipsoidParams::wgs84()) {
  return elevation_angle(ap, user, ell) >= deg2rad(radio.elevation_threshold_deg);
}

/// Inter-satellite link test: the chord must clear the Earth sphere and the
/// free-space amplitude must stay above the prune threshold.
inline bool edge_satellite(const EcefPosition& ap, const EcefPosition& user,
                           const RadioParams& radio, const TopologyOptions& opt = {}) {
  if (opt.segment_check) {
    const double t = isl_closest_point_parameter(ap, user);
    if (t <= 0.0 || t >= 1.0) {
      // Closest approach lies outside the chord; endpoints are above the
      // surface, so the link is clear.
      if (std::min(norm(ap), norm(user)) < opt.earth_radius_m) return false;
    } else if (isl_min_distance_to_center(ap, user) < opt.earth_radius_m) {
      return false;
    }
  } else if (isl_min_distance_to_center(ap, user) < opt.earth_radius_m) {
    return false;
  }
  const double w = pathloss_amplitude(distance(ap, user), radio.wavelength_m());
  return 20.0 * std::log10(w) >= radio.pathloss_threshold_db;
}

inline TopologyGraph build_topology(const NetworkScenario& sc, const TopologyOptions& opt = {}) {
  validate_canonical_order(sc.users);
  TopologyGraph g;
  g.num_aps = sc.num_aps();
  g.num_comm = sc.num_comm();
  g.has_sensing = sc.has_sensing();
  g.num_charge = sc.num_charge();
  const int k_total = g.num_users();
  g.adjacency.assign(static_cast<std::size_t>(g.num_aps) * k_total, 0);
  g.weights.assign(g.adjacency.size(), 0.0);
  g.full_weights.assign(g.adjacency.size(), 0.0);
  const double lambda = sc.radio.wavelength_m();
  for (int m = 0; m < g.num_aps; ++m) {
    for (int k = 0; k < k_total; ++k) {
      const UserNode& u = sc.users[k];
      const std::size_t idx = g.at(m, k);
      if (u.is_terrestrial) {
        if (!edge_terrestrial(sc.aps[m], u.lla, sc.radio)) continue;
        const double w = pathloss_amplitude(distance(sc.aps[m], u.ecef), lambda);
        g.adjacency[idx] = 1;
        g.weights[idx] = w;
        g.full_weights[idx] = w;
      } else {
        bool clear;
        if (opt.segment_check) {
          const double t = isl_closest_point_parameter(sc.aps[m], u.ecef);
          clear = (t <= 0.0 || t >= 1.0)
                      ? std::min(norm(sc.aps[m]), norm(u.ecef)) >= opt.earth_radius_m
                      : isl_min_distance_to_center(sc.aps[m], u.ecef) >= opt.earth_radius_m;
        } else {
          clear = isl_min_distance_to_center(sc.aps[m], u.ecef) >= opt.earth_radius_m;
        }
        if (!clear) continue;
        const double w = pathloss_amplitude(distance(sc.aps[m], u.ecef), lambda);
        g.full_weights[idx] = w;
        if (20.0 * std::log10(w) >= sc.radio.pathloss_threshold_db) {
          g.adjacency[idx] = 1;
          g.weights[idx] = w;
        }
      }
    }
  }
  return g;
}

// ---- graph text format ----

inline KvDocument topology_to_kv(const TopologyGraph& g) {
  KvDocument doc;
  auto& head = doc.add("topology");
  head.entries.push_back({"num_aps", std::to_string(g.num_aps)});
  head.entries.push_back({"num_comm", std::to_string(g.num_comm)});
  head.entries.push_back({"has_sensing", g.has_sensing ? "true" : "false"});
  head.entries.push_back({"num_charge", std::to_string(g.num_charge)});
  const int k_total = g.num_users();
  auto& adj = doc.add("adjacency");
  for (int m = 0; m < g.num_aps; ++m) {
    std::string line;
    for (int k = 0; k < k_total; ++k) {
      if (k) line += ' ';
      line += g.adj(m, k) ? '1' : '0';
    }
    adj.entries.push_back({"row", line});
  }
  auto write_matrix = [&](const char* name, const std::vector<double>& mat) {
    auto& s = doc.add(name);
    for (int m = 0; m < g.num_aps; ++m) {
      std::string line;
      for (int k = 0; k < k_total; ++k) {
        if (k) line += ' ';
        line += format_scientific(mat[g.at(m, k)]);
      }
      s.entries.push_back({"row", line});
    }
  };
  write_matrix("weights", g.weights);
  write_matrix("full_weights", g.full_weights);
  return doc;
}

inline TopologyGraph parse_topology(const KvDocument& doc) {
  TopologyGraph g;
  const KvSection* head = doc.find("topology");
  if (!head) throw MalformedGraphError("missing [topology] section");
  auto require_key = [&](const char* key) -> const std::string& {
    const std::string* v = head->find(key);
    if (!v) throw MalformedGraphError(std::string("missing topology.") + key);
    return *v;
  };
  try {
    g.num_aps = static_cast<int>(kv_int(require_key("num_aps"), "topology.num_aps"));
    g.num_comm = static_cast<int>(kv_int(require_key("num_comm"), "topology.num_comm"));
    g.has_sensing = kv_bool(require_key("has_sensing"), "topology.has_sensing");
    g.num_charge = static_cast<int>(kv_int(require_key("num_charge"), "topology.num_charge"));
  } catch (const ConfigError& e) {
    throw MalformedGraphError(e.what());
  }
  if (g.num_aps < 1 || g.num_comm < 0 || g.num_charge < 0) {
    throw MalformedGraphError("non-positive topology dimensions");
  }
  const int k_total = g.num_users();
  g.adjacency.assign(static_cast<std::size_t>(g.num_aps) * k_total, 0);
  g.weights.assign(g.adjacency.size(), 0.0);
  g.full_weights.assign(g.adjacency.size(), 0.0);

  auto read_rows = [&](const char* name, auto&& store) {
    const KvSection* s = doc.find(name);
    if (!s) throw MalformedGraphError(std::string("missing [") + name + "] section");
    const auto rows = s->find_all("row");
    if (static_cast<int>(rows.size()) != g.num_aps) {
      throw MalformedGraphError(std::string(name) + ": expected " + std::to_string(g.num_aps) +
                                " rows, got " + std::to_string(rows.size()));
    }
    for (int m = 0; m < g.num_aps; ++m) {
      const auto f = split_tokens(rows[m]);
      if (static_cast<int>(f.size()) != k_total) {
        throw MalformedGraphError(std::string(name) + " row " + std::to_string(m) +
                                  ": expected " + std::to_string(k_total) + " columns");
      }
      for (int k = 0; k < k_total; ++k) store(m, k, f[k]);
    }
  };
  read_rows("adjacency", [&](int m, int k, const std::string& tok) {
    if (tok == "1") {
      g.adjacency[g.at(m, k)] = 1;
    } else if (tok != "0") {
      throw MalformedGraphError("adjacency entries must be 0 or 1");
    }
  });
  auto parse_entry = [](const std::string& tok, const char* what) {
    try {
      return kv_double(tok, what);
    } catch (const ConfigError& e) {
      throw MalformedGraphError(e.what());
    }
  };
  read_rows("weights", [&](int m, int k, const std::string& tok) {
    g.weights[g.at(m, k)] = parse_entry(tok, "weights entry");
  });
  read_rows("full_weights", [&](int m, int k, const std::string& tok) {
    g.full_weights[g.at(m, k)] = parse_entry(tok, "full_weights entry");
  });
  for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
    if (g.weights[i] < 0.0 || g.full_weights[i] < 0.0) {
      throw MalformedGraphError("negative weight entry");
    }
    if (g.adjacency[i] && g.weights[i] <= 0.0) {
      throw MalformedGraphError("adjacent link with non-positive weight");
    }
    if (!g.adjacency[i] && g.weights[i] != 0.0) {
      throw MalformedGraphError("weights must be zero off the adjacency mask");
    }
  }
  return g;
}

inline void save_topology(const TopologyGraph& g, const std::string& path) {
  kv_save(topology_to_kv(g), path);
}

inline TopologyGraph load_topology(const std::string& path) {
  KvDocument doc;
  try {
    doc = kv_load(path);
  } catch (const ConfigError& e) {
    throw MalformedGraphError(e.what());
  }
  return parse_topology(doc);
}

}  // namespace saginet
