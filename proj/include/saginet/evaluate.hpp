#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "saginet/channel.hpp"
#include "saginet/errors.hpp"
#include "saginet/optimizer.hpp"
#include "saginet/scenario.hpp"
#include "saginet/topology.hpp"

namespace saginet {

enum class PowerMode { Average, Proportional };

struct PrecodingPlan {
  int num_aps = 0;
  int num_comm = 0;
  std::vector<std::complex<double>> s;        // M x K_C comm precoders
  std::vector<std::complex<double>> s_sense;  // per-AP sensing precoder
  std::vector<double> power;                  // rho_m, linear watts

  std::complex<double> at(int m, int k) const {
    return s[static_cast<std::size_t>(m) * num_comm + k];
  }
};

struct PerformanceReport {
  std::vector<double> per_user_sinr;  // linear, zero for inactive users
  double sum_rate_bps_hz = 0.0;
  double sum_rate_bps = 0.0;
  double sensing_sinr = 0.0;
  double sensing_sinr_db = -std::numeric_limits<double>::infinity();
  double harvested_power_w = 0.0;
  double harvested_power_dbm = -std::numeric_limits<double>::infinity();
  int active_users = 0;
  int active_aps = 0;
};

/// Full physical channel matrix over every geometrically unobstructed
/// link, including ones too weak for the dominant graph; those still carry
/// interference.  Blocked links are exact zeros.
inline std::vector<std::complex<double>> full_channels(const NetworkScenario& sc,
                                                       const TopologyOptions& opt = {}) {
  const int m_total = sc.num_aps();
  const int k_total = sc.num_users();
  std::vector<std::complex<double>> h(static_cast<std::size_t>(m_total) * k_total);
  for (int m = 0; m < m_total; ++m) {
    for (int k = 0; k < k_total; ++k) {
      const UserNode& u = sc.users[k];
      bool clear;
      if (u.is_terrestrial) {
        clear = edge_terrestrial(sc.aps[m], u.lla, sc.radio);
      } else if (opt.segment_check) {
        const double t = isl_closest_point_parameter(sc.aps[m], u.ecef);
        clear = (t <= 0.0 || t >= 1.0)
                    ? std::min(norm(sc.aps[m]), norm(u.ecef)) >= opt.earth_radius_m
                    : isl_min_distance_to_center(sc.aps[m], u.ecef) >= opt.earth_radius_m;
      } else {
        clear = isl_min_distance_to_center(sc.aps[m], u.ecef) >= opt.earth_radius_m;
      }
      if (!clear) continue;
      const UserGainClass cls =
          u.is_terrestrial ? UserGainClass::Terrestrial : UserGainClass::Satellite;
      h[static_cast<std::size_t>(m) * k_total + k] =
          channel_coefficient(sc.aps[m], u.ecef, cls, sc.radio).value();
    }
  }
  return h;
}

namespace detail {

inline void check_decision_dims(const NetworkScenario& sc, const IscptDecision& d,
                                const TopologyGraph& g) {
  if (g.num_aps != sc.num_aps() || g.num_users() != sc.num_users()) {
    throw DimensionMismatchError("topology does not match the scenario roster");
  }
  if (d.num_comm() != g.num_comm || d.num_aps() != g.num_aps ||
      static_cast<int>(d.v_s.size()) != g.num_aps) {
    throw DimensionMismatchError("decision vectors do not match the topology dimensions");
  }
}

}  // namespace detail

/// Conjugate (MRT) precoders over the dominant active links, normalized
/// per transmitting AP; APs active purely for charging have nothing to
/// beam and keep zero rows.
inline PrecodingPlan mrt_precoder(const NetworkScenario& sc, const IscptDecision& d,
                                  const TopologyGraph& g, PowerMode mode = PowerMode::Average) {
  detail::check_decision_dims(sc, d, g);
  const std::vector<std::complex<double>> h = full_channels(sc);
  const int k_total = g.num_users();
  const int sen = g.sensing_col();
  PrecodingPlan plan;
  plan.num_aps = g.num_aps;
  plan.num_comm = g.num_comm;
  plan.s.assign(static_cast<std::size_t>(g.num_aps) * g.num_comm, {});
  plan.s_sense.assign(static_cast<std::size_t>(g.num_aps), {});
  plan.power.assign(static_cast<std::size_t>(g.num_aps), 0.0);

  const double rho_max = sc.radio.max_power_w();
  std::vector<int> load(static_cast<std::size_t>(g.num_aps), 0);
  for (int m = 0; m < g.num_aps; ++m) {
    if (!d.v[m]) continue;
    double norm_sq = 0.0;
    for (int k = 0; k < g.num_comm; ++k) {
      if (g.adj(m, k) && d.u[k]) {
        norm_sq += std::norm(h[static_cast<std::size_t>(m) * k_total + k]);
        ++load[m];
      }
    }
    const bool sensing_here = sen >= 0 && d.v_s[m] && g.adj(m, sen);
    if (sensing_here) {
      norm_sq += std::norm(h[static_cast<std::size_t>(m) * k_total + sen]);
      ++load[m];
    }
    if (norm_sq <= 0.0) {
      load[m] = 0;
      continue;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int k = 0; k < g.num_comm; ++k) {
      if (g.adj(m, k) && d.u[k]) {
        plan.s[static_cast<std::size_t>(m) * g.num_comm + k] =
            std::conj(h[static_cast<std::size_t>(m) * k_total + k]) * inv;
      }
    }
    if (sensing_here) {
      plan.s_sense[m] = std::conj(h[static_cast<std::size_t>(m) * k_total + sen]) * inv;
    }
  }
  int max_load = 0;
  for (int m = 0; m < g.num_aps; ++m) max_load = std::max(max_load, load[m]);
  for (int m = 0; m < g.num_aps; ++m) {
    if (load[m] == 0) continue;
    plan.power[m] = mode == PowerMode::Average ? rho_max : rho_max * load[m] / max_load;
  }
  return plan;
}

/// Per-user SINR over the full physical channels; inactive users get zero.
inline std::vector<double> comm_sinr(const NetworkScenario& sc, const PrecodingPlan& plan,
                                     const IscptDecision& d) {
  const std::vector<std::complex<double>> h = full_channels(sc);
  const int k_total = sc.num_users();
  const double sigma2 = noise_power_linear_w(sc.radio);
  std::vector<double> gamma(static_cast<std::size_t>(plan.num_comm), 0.0);
  for (int k = 0; k < plan.num_comm; ++k) {
    if (!d.u[k]) continue;
    std::complex<double> sig{};
    double interference = 0.0;
    for (int kp = 0; kp < plan.num_comm; ++kp) {
      std::complex<double> acc{};
      for (int m = 0; m < plan.num_aps; ++m) {
        acc += std::sqrt(plan.power[m]) * h[static_cast<std::size_t>(m) * k_total + k] *
               plan.at(m, kp);
      }
      if (kp == k) {
        sig = acc;
      } else {
        interference += std::norm(acc);
      }
    }
    std::complex<double> is{};
    for (int m = 0; m < plan.num_aps; ++m) {
      is += std::sqrt(plan.power[m]) * h[static_cast<std::size_t>(m) * k_total + k] *
            plan.s_sense[m];
    }
    gamma[k] = std::norm(sig) / (interference + std::norm(is) + sigma2);
  }
  return gamma;
}

/// SINR at the sensing target: desired return from the selected AP against
/// the communication beams of every AP.
inline double sensing_sinr(const NetworkScenario& sc, const PrecodingPlan& plan,
                           const IscptDecision& d) {
  int ms = -1;
  for (std::size_t m = 0; m < d.v_s.size(); ++m) {
    if (d.v_s[m]) {
      if (ms >= 0) throw NoSensingApError("more than one sensing AP selected");
      ms = static_cast<int>(m);
    }
  }
  if (ms < 0) throw NoSensingApError("decision selects no sensing AP");
  if (!sc.has_sensing()) throw NoSensingApError("scenario has no sensing target");
  const std::vector<std::complex<double>> h = full_channels(sc);
  const int k_total = sc.num_users();
  const int sen = plan.num_comm;  // canonical column order
  const double sigma2 = noise_power_linear_w(sc.radio);
  const double desired =
      plan.power[ms] *
      std::norm(h[static_cast<std::size_t>(ms) * k_total + sen] * plan.s_sense[ms]);
  double interference = 0.0;
  for (int k = 0; k < plan.num_comm; ++k) {
    std::complex<double> acc{};
    for (int m = 0; m < plan.num_aps; ++m) {
      acc += std::sqrt(plan.power[m]) * h[static_cast<std::size_t>(m) * k_total + sen] *
             plan.at(m, k);
    }
    interference += std::norm(acc);
  }
  return desired / (interference + sigma2);
}

/// Total power collected by the charging users.  The source expression
/// carries rho_m unrooted inside the coherent sums; sqrt_rho switches to
/// the amplitude-consistent form.
inline double harvested_power(const NetworkScenario& sc, const PrecodingPlan& plan,
                              const IscptDecision& d, bool sqrt_rho = false) {
  (void)d;
  const std::vector<std::complex<double>> h = full_channels(sc);
  const int k_total = sc.num_users();
  const int charge0 = plan.num_comm + (sc.has_sensing() ? 1 : 0);
  double total = 0.0;
  for (int p = charge0; p < k_total; ++p) {
    for (int k = 0; k < plan.num_comm; ++k) {
      std::complex<double> acc{};
      for (int m = 0; m < plan.num_aps; ++m) {
        const double f = sqrt_rho ? std::sqrt(plan.power[m]) : plan.power[m];
        acc += f * h[static_cast<std::size_t>(m) * k_total + p] * plan.at(m, k);
      }
      total += std::norm(acc);
    }
    std::complex<double> acc{};
    for (int m = 0; m < plan.num_aps; ++m) {
      const double f = sqrt_rho ? std::sqrt(plan.power[m]) : plan.power[m];
      acc += f * h[static_cast<std::size_t>(m) * k_total + p] * plan.s_sense[m];
    }
    total += std::norm(acc);
  }
  return total;
}

/// Weight-domain approximations of rate, sensing SINR, and harvest, used
/// to cross-check the selection model against its source expressions.
struct TopologyMetrics {
  std::vector<double> user_sinr;
  double rate = 0.0;
  double sensing_sinr = 0.0;
  double harvested = 0.0;
};

inline TopologyMetrics topology_metrics(const TopologyGraph& g, const IscptDecision& d,
                                        double sigma2) {
  TopologyMetrics out;
  const int sen = g.sensing_col();
  out.user_sinr.assign(static_cast<std::size_t>(g.num_comm), 0.0);
  for (int k = 0; k < g.num_comm; ++k) {
    double num = 0.0, den = sigma2;
    for (int m = 0; m < g.num_aps; ++m) {
      if (d.v[m]) {
        num += g.w(m, k) * g.w(m, k);
        for (int kp = 0; kp < g.num_comm; ++kp) {
          if (kp != k && d.u[kp]) den += g.w(m, k) * g.w(m, kp);
        }
      }
      if (sen >= 0 && d.v_s[m]) den += g.w(m, k) * g.w(m, sen);
    }
    out.user_sinr[k] = den > 0.0 ? num / den : 0.0;
    if (d.u[k]) out.rate += std::log2(1.0 + out.user_sinr[k]);
  }
  if (sen >= 0) {
    double num = 0.0, den = sigma2;
    for (int m = 0; m < g.num_aps; ++m) {
      if (d.v_s[m]) num += g.w(m, sen) * g.w(m, sen);
    }
    for (int k = 0; k < g.num_comm; ++k) {
      if (!d.u[k]) continue;
      for (int m = 0; m < g.num_aps; ++m) {
        if (d.v[m]) den += g.w(m, k) * g.w(m, sen);
      }
    }
    out.sensing_sinr = den > 0.0 ? num / den : 0.0;
  }
  for (int p = 0; p < g.num_charge; ++p) {
    const int col = g.charge_col0() + p;
    for (int m = 0; m < g.num_aps; ++m) {
      if (d.v[m]) {
        for (int k = 0; k < g.num_comm; ++k) {
          if (d.u[k]) out.harvested += g.w(m, col) * g.w(m, k);
        }
      }
      if (sen >= 0 && d.v_s[m]) out.harvested += g.w(m, col) * g.w(m, sen);
    }
  }
  return out;
}

struct EvaluateOptions {
  PowerMode mode = PowerMode::Average;
  bool sqrt_rho_harvest = false;
};

inline PerformanceReport evaluate_decision(const NetworkScenario& sc, const TopologyGraph& g,
                                           const IscptDecision& d,
                                           const EvaluateOptions& opt = {}) {
  const PrecodingPlan plan = mrt_precoder(sc, d, g, opt.mode);
  PerformanceReport rep;
  rep.per_user_sinr = comm_sinr(sc, plan, d);
  for (int k = 0; k < g.num_comm; ++k) {
    if (d.u[k]) rep.sum_rate_bps_hz += std::log2(1.0 + rep.per_user_sinr[k]);
  }
  rep.sum_rate_bps = rep.sum_rate_bps_hz * sc.radio.bandwidth_hz;
  if (g.has_sensing) {
    rep.sensing_sinr = sensing_sinr(sc, plan, d);
    rep.sensing_sinr_db = 10.0 * std::log10(rep.sensing_sinr);
  }
  rep.harvested_power_w = harvested_power(sc, plan, d, opt.sqrt_rho_harvest);
  rep.harvested_power_dbm = 10.0 * std::log10(rep.harvested_power_w) + 30.0;
  for (int x : d.u) rep.active_users += x;
  for (int x : d.v) rep.active_aps += x;
  return rep;
}

}  // namespace saginet
