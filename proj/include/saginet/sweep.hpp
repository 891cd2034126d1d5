#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "saginet/baselines.hpp"
#include "saginet/evaluate.hpp"
#include "saginet/kvfile.hpp"
#include "saginet/optimizer.hpp"
#include "saginet/rng.hpp"
#include "saginet/scenario.hpp"
#include "saginet/topology.hpp"

namespace saginet {

struct SweepSpec {
  std::vector<int> ap_counts;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods{"ta", "greedy", "none"};
  std::string output_path;
  IscptThresholds thresholds;
  long node_limit = 1000000;
  PowerMode power_mode = PowerMode::Average;
  double corr_threshold = 0.5;
  /// Wall-clock timing is the one nondeterministic column; it stays zero
  /// unless explicitly requested so that repeated runs are byte-identical.
  bool measure_time = false;
};

struct SweepRow {
  int ap_count = 0;
  std::uint64_t seed = 0;
  std::string method;
  double sum_rate_bps_hz = std::numeric_limits<double>::quiet_NaN();
  double sensing_sinr_db = std::numeric_limits<double>::quiet_NaN();
  double harvested_power_dbm = std::numeric_limits<double>::quiet_NaN();
  int active_users = 0;
  int active_aps = 0;
  std::string solve_status;
  long solve_nodes = 0;
  double wall_ms = 0.0;
  // Linear-domain copies for downstream aggregation; not CSV columns.
  double sensing_sinr = std::numeric_limits<double>::quiet_NaN();
  double harvested_power_w = std::numeric_limits<double>::quiet_NaN();

  bool succeeded() const { return solve_status == "optimal" || solve_status == "ok"; }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double max_precoder_norm_dev = 0.0;
};

inline std::string sweep_csv_header() {
  return "M,seed,method,sum_rate_bps_hz,sensing_sinr_db,harvested_power_dbm,active_users,"
         "active_aps,solve_status,solve_nodes,wall_ms";
}

inline std::string sweep_row_csv(const SweepRow& r) {
  std::string out = std::to_string(r.ap_count) + "," + std::to_string(r.seed) + "," + r.method;
  out += "," + format_double(r.sum_rate_bps_hz);
  out += "," + format_double(r.sensing_sinr_db);
  out += "," + format_double(r.harvested_power_dbm);
  out += "," + std::to_string(r.active_users);
  out += "," + std::to_string(r.active_aps);
  out += "," + r.solve_status;
  out += "," + std::to_string(r.solve_nodes);
  out += "," + format_double(r.wall_ms);
  return out;
}

inline std::string sweep_to_csv(const SweepResult& res) {
  std::string out = sweep_csv_header() + "\n";
  for (const auto& r : res.rows) out += sweep_row_csv(r) + "\n";
  return out;
}

/// Seeded uniform subsample of the AP shell; the draw depends only on
/// (seed, count), so sweep cells are reproducible in isolation.
inline NetworkScenario subsample_aps(const NetworkScenario& full, int count,
                                     std::uint64_t seed) {
  if (count < 1 || count > full.num_aps()) {
    throw InvalidSpecError("AP subsample count must lie in [1, shell size]");
  }
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(count)));
  std::vector<std::size_t> picked =
      sample_without_replacement(rng, full.aps.size(), static_cast<std::size_t>(count));
  std::sort(picked.begin(), picked.end());
  NetworkScenario sub;
  sub.rng_seed = full.rng_seed;
  sub.radio = full.radio;
  sub.users = full.users;
  for (std::size_t i : picked) {
    sub.ap_ids.push_back(full.ap_ids[i]);
    sub.aps.push_back(full.aps[i]);
  }
  return sub;
}

namespace detail {

inline void validate_sweep_spec(const SweepSpec& spec, const ScenarioConfig& cfg) {
  if (spec.ap_counts.empty()) throw ConfigError("sweep needs at least one AP count");
  if (spec.seeds.empty()) throw ConfigError("sweep needs at least one seed");
  if (spec.methods.empty()) throw ConfigError("sweep needs at least one method");
  for (int m : spec.ap_counts) {
    if (m < 1 || m > cfg.ap_shell.total()) {
      throw ConfigError("sweep AP count " + std::to_string(m) + " exceeds the shell size " +
                        std::to_string(cfg.ap_shell.total()));
    }
  }
  for (const auto& method : spec.methods) {
    if (method != "ta" && method != "greedy" && method != "none") {
      throw ConfigError("unknown sweep method '" + method + "'");
    }
  }
  if (!spec.thresholds.valid()) throw ConfigError("sweep thresholds must lie in [0,1]");
}

}  // namespace detail

inline SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& config) {
  detail::validate_sweep_spec(spec, config);
  SweepResult result;
  std::map<std::uint64_t, NetworkScenario> full_cache;
  const double sigma2 = noise_power_linear_w(config.radio);

  for (int m_count : spec.ap_counts) {
    for (const std::uint64_t seed : spec.seeds) {
      auto it = full_cache.find(seed);
      if (it == full_cache.end()) {
        ScenarioConfig cfg = config;
        cfg.seed = seed;
        it = full_cache.emplace(seed, build_scenario(cfg)).first;
      }
      const NetworkScenario sub = subsample_aps(it->second, m_count, seed);
      const TopologyGraph graph = build_topology(sub);

      for (const auto& method : spec.methods) {
        SweepRow row;
        row.ap_count = m_count;
        row.seed = seed;
        row.method = method;
        const auto t0 = std::chrono::steady_clock::now();

        IscptDecision decision;
        bool have_decision = false;
        if (method == "ta") {
          const P2Build built = build_p2_model(graph, spec.thresholds, sigma2);
          const MilpSolution sol = solve_bnb(built.model, spec.node_limit);
          row.solve_nodes = sol.nodes;
          if (sol.status == MilpStatus::Optimal) {
            decision = decode_decision(built.layout, sol.values, sol.objective);
            have_decision = true;
            row.solve_status = "optimal";
          } else {
            row.solve_status = to_string(sol.status);
          }
        } else if (method == "greedy") {
          decision = greedy_user_selection(graph, spec.corr_threshold);
          have_decision = true;
          row.solve_status = "ok";
        } else {
          try {
            decision = no_selection(graph);
            have_decision = true;
            row.solve_status = "ok";
          } catch (const NoSensingLinkError&) {
            row.solve_status = "no_sensing_link";
          }
        }

        if (have_decision) {
          try {
            const PrecodingPlan plan = mrt_precoder(sub, decision, graph, spec.power_mode);
            for (int m = 0; m < plan.num_aps; ++m) {
              double s = std::norm(plan.s_sense[m]);
              for (int k = 0; k < plan.num_comm; ++k) s += std::norm(plan.at(m, k));
              if (s > 0.0) {
                result.max_precoder_norm_dev =
                    std::max(result.max_precoder_norm_dev, std::abs(s - 1.0));
              }
            }
            const std::vector<double> gamma = comm_sinr(sub, plan, decision);
            row.sum_rate_bps_hz = 0.0;
            for (int k = 0; k < graph.num_comm; ++k) {
              if (decision.u[k]) row.sum_rate_bps_hz += std::log2(1.0 + gamma[k]);
            }
            if (graph.has_sensing) {
              row.sensing_sinr = sensing_sinr(sub, plan, decision);
              row.sensing_sinr_db = 10.0 * std::log10(row.sensing_sinr);
            }
            row.harvested_power_w = harvested_power(sub, plan, decision);
            row.harvested_power_dbm = 10.0 * std::log10(row.harvested_power_w) + 30.0;
            for (int x : decision.u) row.active_users += x;
            for (int x : decision.v) row.active_aps += x;
          } catch (const NoSensingApError&) {
            row.solve_status = "no_sensing_ap";
          }
        }
        if (spec.measure_time) {
          row.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

}  // namespace saginet
