#pragma once

// Literal transcription of the SINR and harvested-power expressions, computed
// from node positions with no shared code beyond the data structures. Assumes
// every AP-user link is unobstructed, so golden fixtures must be built that
// way.

#include <cmath>
#include <complex>
#include <vector>

#include "saginet/evaluate.hpp"
#include "saginet/scenario.hpp"

namespace testsupport {

struct StraightlineReport {
  std::vector<double> gamma;
  double gamma_s = 0.0;
  double e_p = 0.0;
  double sigma2 = 0.0;
};

inline StraightlineReport straightline_eval(const saginet::NetworkScenario& sc,
                                            const saginet::PrecodingPlan& plan,
                                            const saginet::IscptDecision& d,
                                            bool sqrt_rho_harvest = false) {
  const double pi = 3.14159265358979323846;
  const double lambda = 299792458.0 / sc.radio.carrier_hz;
  const int big_m = static_cast<int>(sc.aps.size());
  const int num_users = static_cast<int>(sc.users.size());

  auto channel = [&](int m, int j) {
    const auto& a = sc.aps[m];
    const auto& u = sc.users[j].ecef;
    const double dx = a.x_m - u.x_m, dy = a.y_m - u.y_m, dz = a.z_m - u.z_m;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double gain_user =
        sc.users[j].is_terrestrial ? sc.radio.gain_user_terr_dbi : sc.radio.gain_user_sat_dbi;
    const double amp = lambda / (4.0 * pi * dist) *
                       std::sqrt(std::pow(10.0, sc.radio.gain_ap_dbi / 10.0) *
                                 std::pow(10.0, gain_user / 10.0));
    // Principal value of -2*pi*d/lambda; the huge raw angle would otherwise
    // lose the comparison in argument-reduction noise.
    double phase = std::fmod(-2.0 * pi * dist / lambda, 2.0 * pi);
    if (phase < 0.0) phase += 2.0 * pi;
    return std::complex<double>(amp * std::cos(phase), amp * std::sin(phase));
  };

  std::vector<int> comm_cols, charge_cols;
  int sensing_user = -1;
  for (int j = 0; j < num_users; ++j) {
    switch (sc.users[j].role) {
      case saginet::NodeRole::CommUserTerrestrial:
      case saginet::NodeRole::CommUserSatellite:
        comm_cols.push_back(j);
        break;
      case saginet::NodeRole::SensingTarget:
        sensing_user = j;
        break;
      case saginet::NodeRole::ChargeUser:
        charge_cols.push_back(j);
        break;
      default:
        break;
    }
  }
  const int big_k = static_cast<int>(comm_cols.size());

  StraightlineReport rep;
  double noise_dbm = sc.radio.noise_power_dbm;
  if (std::isnan(noise_dbm)) noise_dbm = -174.0 + 10.0 * std::log10(sc.radio.bandwidth_hz);
  rep.sigma2 = std::pow(10.0, (noise_dbm - 30.0) / 10.0);

  // Received symbol amplitude at user j for the beam aimed at comm stream kp
  // (kp == -1 means the sensing beam).
  auto beam_at = [&](int j, int kp) {
    std::complex<double> sum = 0.0;
    for (int m = 0; m < big_m; ++m) {
      const std::complex<double> s =
          kp < 0 ? plan.s_sense[m] : plan.at(m, kp);
      sum += std::sqrt(plan.power[m]) * channel(m, j) * s;
    }
    return sum;
  };

  rep.gamma.assign(big_k, 0.0);
  for (int k = 0; k < big_k; ++k) {
    if (!d.u[k]) continue;
    const int j = comm_cols[k];
    const double num = std::norm(beam_at(j, k));
    double den = rep.sigma2 + std::norm(beam_at(j, -1));
    for (int kp = 0; kp < big_k; ++kp) {
      if (kp != k) den += std::norm(beam_at(j, kp));
    }
    rep.gamma[k] = num / den;
  }

  if (sensing_user >= 0) {
    int ms = -1;
    for (int m = 0; m < big_m; ++m) {
      if (d.v_s[m]) ms = m;
    }
    if (ms >= 0) {
      const double num =
          plan.power[ms] * std::norm(channel(ms, sensing_user) * plan.s_sense[ms]);
      double den = rep.sigma2;
      for (int k = 0; k < big_k; ++k) den += std::norm(beam_at(sensing_user, k));
      rep.gamma_s = num / den;
    }
  }

  for (int j : charge_cols) {
    auto harvest_beam = [&](int kp) {
      std::complex<double> sum = 0.0;
      for (int m = 0; m < big_m; ++m) {
        const std::complex<double> s = kp < 0 ? plan.s_sense[m] : plan.at(m, kp);
        const double f = sqrt_rho_harvest ? std::sqrt(plan.power[m]) : plan.power[m];
        sum += f * channel(m, j) * s;
      }
      return std::norm(sum);
    };
    for (int k = 0; k < big_k; ++k) rep.e_p += harvest_beam(k);
    rep.e_p += harvest_beam(-1);
  }
  return rep;
}

}  // namespace testsupport
