#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "saginet/channel.hpp"
#include "saginet/errors.hpp"
#include "saginet/geo.hpp"
#include "saginet/kvfile.hpp"
#include "saginet/rng.hpp"

namespace saginet {

enum class NodeRole {
  ApSatellite,
  CommUserTerrestrial,
  CommUserSatellite,
  ChargeUser,
  SensingTarget,
};

inline bool is_comm_role(NodeRole r) {
  return r == NodeRole::CommUserTerrestrial || r == NodeRole::CommUserSatellite;
}

/// One Walker-delta shell: evenly spaced planes at a common inclination,
/// evenly phased satellites per plane.
struct ConstellationSpec {
  double altitude_m = 700e3;
  int num_planes = 16;
  int sats_per_plane = 8;
  double inclination_deg = 53.0;
  double raan_spread_deg = 360.0;
  double phasing_offset_deg = 0.0;

  int total() const { return num_planes * sats_per_plane; }
};

struct CitySpec {
  std::string name;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_m = 0.0;
};

inline std::vector<CitySpec> default_cities() {
  return {
      {"Berlin", 52.52, 13.4, 0.0},    {"NewYork", 40.71, -74.0, 0.0},
      {"London", 50.5, -0.13, 0.0},    {"Beijing", 39.9, 116.4, 0.0},
      {"Sydney", -33.87, 151.21, 0.0},
  };
}

struct ScenarioConfig {
  std::uint64_t seed = 1;
  ConstellationSpec ap_shell{700e3, 16, 8, 53.0};
  ConstellationSpec user_shell{300e3, 4, 32, 53.0};
  int satellite_users = 30;
  int charge_users = 4;
  bool sensing_target = true;
  double city_jitter_deg = 0.0;
  std::vector<CitySpec> cities = default_cities();
  RadioParams radio;
};

struct UserNode {
  std::string id;
  NodeRole role = NodeRole::CommUserSatellite;
  bool is_terrestrial = false;
  GeodeticPosition lla;  // meaningful for terrestrial nodes only
  EcefPosition ecef;     // always populated (terrestrial via WGS84)
};

/// Immutable node roster.  Users follow the canonical column order used by
/// the topology matrices: communication users first, then the sensing
/// target, then the charge users.
struct NetworkScenario {
  std::uint64_t rng_seed = 0;
  RadioParams radio;
  std::vector<std::string> ap_ids;
  std::vector<EcefPosition> aps;
  std::vector<UserNode> users;

  int num_aps() const { return static_cast<int>(aps.size()); }
  int num_users() const { return static_cast<int>(users.size()); }

  int num_comm() const {
    int n = 0;
    for (const auto& u : users) n += is_comm_role(u.role) ? 1 : 0;
    return n;
  }
  bool has_sensing() const {
    for (const auto& u : users) {
      if (u.role == NodeRole::SensingTarget) return true;
    }
    return false;
  }
  int num_charge() const {
    int n = 0;
    for (const auto& u : users) n += u.role == NodeRole::ChargeUser ? 1 : 0;
    return n;
  }
};

/// Walker-delta snapshot on a sphere of radius mean Earth radius plus
/// altitude.  Plane p gets RAAN p * raan_spread / P; satellite q in plane p
/// sits at argument of latitude q * 360 / S + p * phasing_offset + epoch.
inline std::vector<EcefPosition> generate_constellation(const ConstellationSpec& spec,
                                                        double epoch_phase_rad = 0.0) {
  if (spec.num_planes < 1 || spec.sats_per_plane < 1) {
    throw InvalidSpecError("generate_constellation: plane and per-plane counts must be >= 1");
  }
  const double r = kEarthMeanRadiusM + spec.altitude_m;
  const double incl = deg2rad(spec.inclination_deg);
  const double ci = std::cos(incl), si = std::sin(incl);
  std::vector<EcefPosition> out;
  out.reserve(static_cast<std::size_t>(spec.total()));
  for (int p = 0; p < spec.num_planes; ++p) {
    const double raan = deg2rad(spec.raan_spread_deg) * p / spec.num_planes;
    const double cr = std::cos(raan), sr = std::sin(raan);
    for (int q = 0; q < spec.sats_per_plane; ++q) {
      const double arg = 2.0 * kPi * q / spec.sats_per_plane +
                         deg2rad(spec.phasing_offset_deg) * p + epoch_phase_rad;
      const double cu = std::cos(arg), su = std::sin(arg);
      // R_z(raan) * R_x(incl) applied to the in-plane circle point.
      out.push_back(EcefPosition{r * (cr * cu - sr * su * ci),
                                 r * (sr * cu + cr * su * ci),
                                 r * su * si});
    }
  }
  return out;
}

inline void validate_config(const ScenarioConfig& cfg) {
  if (cfg.ap_shell.num_planes < 1 || cfg.ap_shell.sats_per_plane < 1 ||
      cfg.user_shell.num_planes < 1 || cfg.user_shell.sats_per_plane < 1) {
    throw ConfigError("constellation plane/satellite counts must be >= 1");
  }
  if (cfg.satellite_users < 0 || cfg.charge_users < 0) {
    throw ConfigError("user counts must be non-negative");
  }
  if (cfg.satellite_users > cfg.user_shell.total()) {
    throw InsufficientSatellitesError("requested satellite users exceed the user shell size");
  }
  const int reserved = cfg.charge_users + (cfg.sensing_target ? 1 : 0);
  if (reserved > cfg.satellite_users) {
    throw ConfigError("charge users plus sensing target exceed the selected satellite users");
  }
  if (!cfg.radio.valid()) throw ConfigError("radio parameters invalid");
  std::set<std::string> names;
  for (const auto& c : cfg.cities) {
    if (c.name.empty()) throw ConfigError("city with empty name");
    if (!names.insert(c.name).second) throw ConfigError("duplicate city name " + c.name);
    if (!GeodeticPosition{c.latitude_deg, c.longitude_deg, c.altitude_m}.valid()) {
      throw ConfigError("city " + c.name + " has invalid coordinates");
    }
  }
}

/// Build the full scenario: AP shell, seeded selection of user satellites,
/// seeded charge/sensing role draw, and one terrestrial user per city.
inline NetworkScenario build_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  NetworkScenario sc;
  sc.rng_seed = cfg.seed;
  sc.radio = cfg.radio;

  sc.aps = generate_constellation(cfg.ap_shell);
  sc.ap_ids.reserve(sc.aps.size());
  for (std::size_t i = 0; i < sc.aps.size(); ++i) sc.ap_ids.push_back("ap-" + std::to_string(i));

  const std::vector<EcefPosition> shell = generate_constellation(cfg.user_shell);
  std::mt19937_64 rng(cfg.seed);
  const std::vector<std::size_t> picked =
      sample_without_replacement(rng, shell.size(), static_cast<std::size_t>(cfg.satellite_users));

  // Charge users and the sensing target are drawn from the picked
  // satellites; the rest become satellite communication users.
  const std::size_t reserved = static_cast<std::size_t>(cfg.charge_users) +
                               (cfg.sensing_target ? 1u : 0u);
  const std::vector<std::size_t> special =
      sample_without_replacement(rng, picked.size(), reserved);
  std::set<std::size_t> charge_set, sensing_set;
  for (std::size_t i = 0; i < special.size(); ++i) {
    if (i < static_cast<std::size_t>(cfg.charge_users)) {
      charge_set.insert(picked[special[i]]);
    } else {
      sensing_set.insert(picked[special[i]]);
    }
  }

  std::vector<std::size_t> comm_sats, charge_sats, sensing_sats;
  for (std::size_t idx : picked) {
    if (charge_set.count(idx)) {
      charge_sats.push_back(idx);
    } else if (sensing_set.count(idx)) {
      sensing_sats.push_back(idx);
    } else {
      comm_sats.push_back(idx);
    }
  }
  std::sort(comm_sats.begin(), comm_sats.end());
  std::sort(charge_sats.begin(), charge_sats.end());

  // Canonical order: terrestrial comm, satellite comm, sensing, charge.
  for (const auto& c : cfg.cities) {
    UserNode u;
    std::string low = c.name;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char ch) {
      return static_cast<char>(std::tolower(ch));
    });
    u.id = "tue-" + low;
    u.role = NodeRole::CommUserTerrestrial;
    u.is_terrestrial = true;
    u.lla = {c.latitude_deg, c.longitude_deg, c.altitude_m};
    if (cfg.city_jitter_deg > 0.0) {
      u.lla.latitude_deg += (2.0 * uniform_unit(rng) - 1.0) * cfg.city_jitter_deg;
      u.lla.longitude_deg += (2.0 * uniform_unit(rng) - 1.0) * cfg.city_jitter_deg;
      u.lla.latitude_deg = std::clamp(u.lla.latitude_deg, -90.0, 90.0);
      if (u.lla.longitude_deg > 180.0) u.lla.longitude_deg -= 360.0;
      if (u.lla.longitude_deg < -180.0) u.lla.longitude_deg += 360.0;
    }
    u.ecef = lla_to_ecef(u.lla);
    sc.users.push_back(std::move(u));
  }
  auto push_sat = [&](std::size_t idx, NodeRole role, const char* prefix) {
    UserNode u;
    u.id = std::string(prefix) + "-" + std::to_string(idx);
    u.role = role;
    u.is_terrestrial = false;
    u.ecef = shell[idx];
    sc.users.push_back(std::move(u));
  };
  for (std::size_t idx : comm_sats) push_sat(idx, NodeRole::CommUserSatellite, "sue");
  for (std::size_t idx : sensing_sats) push_sat(idx, NodeRole::SensingTarget, "star");
  for (std::size_t idx : charge_sats) push_sat(idx, NodeRole::ChargeUser, "pue");
  return sc;
}

// ---- config file schema ----

namespace detail {

inline void read_shell(const KvSection& s, ConstellationSpec& shell) {
  for (const auto& e : s.entries) {
    if (e.key == "altitude_m") {
      shell.altitude_m = kv_double(e.value, s.name + ".altitude_m");
    } else if (e.key == "planes") {
      shell.num_planes = static_cast<int>(kv_int(e.value, s.name + ".planes"));
    } else if (e.key == "sats_per_plane") {
      shell.sats_per_plane = static_cast<int>(kv_int(e.value, s.name + ".sats_per_plane"));
    } else if (e.key == "inclination_deg") {
      shell.inclination_deg = kv_double(e.value, s.name + ".inclination_deg");
    } else if (e.key == "raan_spread_deg") {
      shell.raan_spread_deg = kv_double(e.value, s.name + ".raan_spread_deg");
    } else if (e.key == "phasing_offset_deg") {
      shell.phasing_offset_deg = kv_double(e.value, s.name + ".phasing_offset_deg");
    } else {
      throw ConfigError("unknown key '" + e.key + "' in [" + s.name + "]");
    }
  }
}

inline void read_radio(const KvSection& s, RadioParams& r) {
  for (const auto& e : s.entries) {
    if (e.key == "carrier_hz") {
      r.carrier_hz = kv_double(e.value, "radio.carrier_hz");
    } else if (e.key == "bandwidth_hz") {
      r.bandwidth_hz = kv_double(e.value, "radio.bandwidth_hz");
    } else if (e.key == "gain_ap_dbi") {
      r.gain_ap_dbi = kv_double(e.value, "radio.gain_ap_dbi");
    } else if (e.key == "gain_user_sat_dbi") {
      r.gain_user_sat_dbi = kv_double(e.value, "radio.gain_user_sat_dbi");
    } else if (e.key == "gain_user_terr_dbi") {
      r.gain_user_terr_dbi = kv_double(e.value, "radio.gain_user_terr_dbi");
    } else if (e.key == "max_power_db") {
      r.max_power_db = kv_double(e.value, "radio.max_power_db");
    } else if (e.key == "max_power_ref") {
      if (e.value == "dbw") {
        r.max_power_is_dbw = true;
      } else if (e.value == "dbm") {
        r.max_power_is_dbw = false;
      } else {
        throw ConfigError("radio.max_power_ref must be dbw or dbm");
      }
    } else if (e.key == "noise_power_dbm") {
      r.noise_power_dbm = e.value == "auto"
                              ? std::numeric_limits<double>::quiet_NaN()
                              : kv_double(e.value, "radio.noise_power_dbm");
    } else if (e.key == "elevation_threshold_deg") {
      r.elevation_threshold_deg = kv_double(e.value, "radio.elevation_threshold_deg");
    } else if (e.key == "pathloss_threshold_db") {
      r.pathloss_threshold_db = kv_double(e.value, "radio.pathloss_threshold_db");
    } else {
      throw ConfigError("unknown key '" + e.key + "' in [radio]");
    }
  }
}

inline void write_radio(KvSection& s, const RadioParams& r) {
  s.entries.push_back({"carrier_hz", format_double(r.carrier_hz)});
  s.entries.push_back({"bandwidth_hz", format_double(r.bandwidth_hz)});
  s.entries.push_back({"gain_ap_dbi", format_double(r.gain_ap_dbi)});
  s.entries.push_back({"gain_user_sat_dbi", format_double(r.gain_user_sat_dbi)});
  s.entries.push_back({"gain_user_terr_dbi", format_double(r.gain_user_terr_dbi)});
  s.entries.push_back({"max_power_db", format_double(r.max_power_db)});
  s.entries.push_back({"max_power_ref", r.max_power_is_dbw ? "dbw" : "dbm"});
  s.entries.push_back({"noise_power_dbm", std::isnan(r.noise_power_dbm)
                                              ? std::string("auto")
                                              : format_double(r.noise_power_dbm)});
  s.entries.push_back({"elevation_threshold_deg", format_double(r.elevation_threshold_deg)});
  s.entries.push_back({"pathloss_threshold_db", format_double(r.pathloss_threshold_db)});
}

}  // namespace detail

inline ScenarioConfig parse_scenario_config(const KvDocument& doc) {
  ScenarioConfig cfg;
  bool saw_cities = false;
  for (const auto& s : doc.sections) {
    if (s.name.empty()) {
      if (!s.entries.empty()) throw ConfigError("keys outside any section");
      continue;
    }
    if (s.name == "scenario") {
      for (const auto& e : s.entries) {
        if (e.key == "seed") {
          cfg.seed = static_cast<std::uint64_t>(kv_int(e.value, "scenario.seed"));
        } else {
          throw ConfigError("unknown key '" + e.key + "' in [scenario]");
        }
      }
    } else if (s.name == "ap_shell") {
      detail::read_shell(s, cfg.ap_shell);
    } else if (s.name == "user_shell") {
      detail::read_shell(s, cfg.user_shell);
    } else if (s.name == "users") {
      for (const auto& e : s.entries) {
        if (e.key == "satellite_users") {
          cfg.satellite_users = static_cast<int>(kv_int(e.value, "users.satellite_users"));
        } else if (e.key == "charge_users") {
          cfg.charge_users = static_cast<int>(kv_int(e.value, "users.charge_users"));
        } else if (e.key == "sensing_target") {
          cfg.sensing_target = kv_bool(e.value, "users.sensing_target");
        } else if (e.key == "city_jitter_deg") {
          cfg.city_jitter_deg = kv_double(e.value, "users.city_jitter_deg");
        } else {
          throw ConfigError("unknown key '" + e.key + "' in [users]");
        }
      }
    } else if (s.name == "cities") {
      cfg.cities.clear();
      saw_cities = true;
      for (const auto& e : s.entries) {
        if (e.key != "city") throw ConfigError("unknown key '" + e.key + "' in [cities]");
        const auto f = split_tokens(e.value);
        if (f.size() != 3 && f.size() != 4) {
          throw ConfigError("city expects: name lat lon [alt]");
        }
        CitySpec c;
        c.name = f[0];
        c.latitude_deg = kv_double(f[1], "city latitude");
        c.longitude_deg = kv_double(f[2], "city longitude");
        c.altitude_m = f.size() == 4 ? kv_double(f[3], "city altitude") : 0.0;
        cfg.cities.push_back(std::move(c));
      }
    } else if (s.name == "radio") {
      detail::read_radio(s, cfg.radio);
    } else {
      throw ConfigError("unknown section [" + s.name + "]");
    }
  }
  (void)saw_cities;
  validate_config(cfg);
  return cfg;
}

inline ScenarioConfig load_scenario_config(const std::string& path) {
  return parse_scenario_config(kv_load(path));
}

inline KvDocument scenario_config_to_kv(const ScenarioConfig& cfg) {
  KvDocument doc;
  auto& sc = doc.add("scenario");
  sc.entries.push_back({"seed", std::to_string(cfg.seed)});
  auto write_shell = [&](const char* name, const ConstellationSpec& shell) {
    auto& s = doc.add(name);
    s.entries.push_back({"altitude_m", format_double(shell.altitude_m)});
    s.entries.push_back({"planes", std::to_string(shell.num_planes)});
    s.entries.push_back({"sats_per_plane", std::to_string(shell.sats_per_plane)});
    s.entries.push_back({"inclination_deg", format_double(shell.inclination_deg)});
    s.entries.push_back({"raan_spread_deg", format_double(shell.raan_spread_deg)});
    s.entries.push_back({"phasing_offset_deg", format_double(shell.phasing_offset_deg)});
  };
  write_shell("ap_shell", cfg.ap_shell);
  write_shell("user_shell", cfg.user_shell);
  auto& us = doc.add("users");
  us.entries.push_back({"satellite_users", std::to_string(cfg.satellite_users)});
  us.entries.push_back({"charge_users", std::to_string(cfg.charge_users)});
  us.entries.push_back({"sensing_target", cfg.sensing_target ? "true" : "false"});
  us.entries.push_back({"city_jitter_deg", format_double(cfg.city_jitter_deg)});
  auto& cs = doc.add("cities");
  for (const auto& c : cfg.cities) {
    cs.entries.push_back({"city", c.name + " " + format_double(c.latitude_deg) + " " +
                                      format_double(c.longitude_deg) + " " +
                                      format_double(c.altitude_m)});
  }
  auto& rs = doc.add("radio");
  detail::write_radio(rs, cfg.radio);
  return doc;
}

// ---- scenario serialization ----

namespace detail {

inline const char* role_token(NodeRole r) {
  switch (r) {
    case NodeRole::CommUserTerrestrial:
    case NodeRole::CommUserSatellite:
      return "comm";
    case NodeRole::ChargeUser:
      return "charge";
    case NodeRole::SensingTarget:
      return "sensing";
    default:
      return "ap";
  }
}

}  // namespace detail

inline KvDocument scenario_to_kv(const NetworkScenario& sc) {
  KvDocument doc;
  auto& head = doc.add("scenario");
  head.entries.push_back({"seed", std::to_string(sc.rng_seed)});
  auto& rs = doc.add("radio");
  detail::write_radio(rs, sc.radio);
  auto& aps = doc.add("aps");
  for (std::size_t i = 0; i < sc.aps.size(); ++i) {
    aps.entries.push_back({"ap", sc.ap_ids[i] + " " + format_double(sc.aps[i].x_m) + " " +
                                     format_double(sc.aps[i].y_m) + " " +
                                     format_double(sc.aps[i].z_m)});
  }
  auto& us = doc.add("users");
  for (const auto& u : sc.users) {
    std::string line = u.id;
    line += u.is_terrestrial ? " terr " : " sat ";
    line += detail::role_token(u.role);
    if (u.is_terrestrial) {
      line += " " + format_double(u.lla.latitude_deg) + " " + format_double(u.lla.longitude_deg) +
              " " + format_double(u.lla.altitude_m);
    } else {
      line += " " + format_double(u.ecef.x_m) + " " + format_double(u.ecef.y_m) + " " +
              format_double(u.ecef.z_m);
    }
    us.entries.push_back({"user", line});
  }
  return doc;
}

inline void validate_canonical_order(const std::vector<UserNode>& users) {
  int phase = 0;  // 0 comm, 1 sensing, 2 charge
  int sensing_count = 0;
  for (const auto& u : users) {
    int p;
    switch (u.role) {
      case NodeRole::CommUserTerrestrial:
      case NodeRole::CommUserSatellite:
        p = 0;
        break;
      case NodeRole::SensingTarget:
        p = 1;
        ++sensing_count;
        break;
      case NodeRole::ChargeUser:
        p = 2;
        break;
      default:
        throw ConfigError("AP role in user list");
    }
    if (p < phase) {
      throw ConfigError("users out of canonical order (comm, sensing, charge)");
    }
    phase = p;
  }
  if (sensing_count > 1) throw ConfigError("more than one sensing target");
}

inline NetworkScenario parse_scenario(const KvDocument& doc) {
  NetworkScenario sc;
  const KvSection& head = doc.require("scenario");
  if (const std::string* seed = head.find("seed")) {
    sc.rng_seed = static_cast<std::uint64_t>(kv_int(*seed, "scenario.seed"));
  }
  detail::read_radio(doc.require("radio"), sc.radio);
  for (const auto& line : doc.require("aps").find_all("ap")) {
    const auto f = split_tokens(line);
    if (f.size() != 4) throw ConfigError("ap expects: id x y z");
    sc.ap_ids.push_back(f[0]);
    sc.aps.push_back({kv_double(f[1], "ap.x"), kv_double(f[2], "ap.y"), kv_double(f[3], "ap.z")});
  }
  if (sc.aps.empty()) throw ConfigError("scenario needs at least one AP");
  for (const auto& line : doc.require("users").find_all("user")) {
    const auto f = split_tokens(line);
    if (f.size() != 6) throw ConfigError("user expects: id terr|sat role c1 c2 c3");
    UserNode u;
    u.id = f[0];
    if (f[1] == "terr") {
      u.is_terrestrial = true;
    } else if (f[1] == "sat") {
      u.is_terrestrial = false;
    } else {
      throw ConfigError("user frame must be terr or sat");
    }
    if (f[2] == "comm") {
      u.role = u.is_terrestrial ? NodeRole::CommUserTerrestrial : NodeRole::CommUserSatellite;
    } else if (f[2] == "sensing") {
      u.role = NodeRole::SensingTarget;
    } else if (f[2] == "charge") {
      u.role = NodeRole::ChargeUser;
    } else {
      throw ConfigError("unknown user role " + f[2]);
    }
    if (u.is_terrestrial) {
      u.lla = {kv_double(f[3], "user.lat"), kv_double(f[4], "user.lon"),
               kv_double(f[5], "user.alt")};
      u.ecef = lla_to_ecef(u.lla);
    } else {
      u.ecef = {kv_double(f[3], "user.x"), kv_double(f[4], "user.y"), kv_double(f[5], "user.z")};
    }
    sc.users.push_back(std::move(u));
  }
  validate_canonical_order(sc.users);
  std::set<std::string> ids(sc.ap_ids.begin(), sc.ap_ids.end());
  for (const auto& u : sc.users) {
    if (!ids.insert(u.id).second) throw ConfigError("duplicate node id " + u.id);
  }
  return sc;
}

inline void save_scenario(const NetworkScenario& sc, const std::string& path) {
  kv_save(scenario_to_kv(sc), path);
}

inline NetworkScenario load_scenario(const std::string& path) {
  return parse_scenario(kv_load(path));
}

}  // namespace saginet
