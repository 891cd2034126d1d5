#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "saginet/errors.hpp"
#include "saginet/geo.hpp"

namespace saginet {

inline constexpr double kSpeedOfLightMps = 299792458.0;

/// Link-budget parameters.  Defaults mirror the simulation parameter table:
/// 2 GHz carrier, 100 MHz bandwidth, 30 dBi AP gain, 30/40 dBi satellite/
/// terrestrial user gain, 10 dB max AP power, 15 deg elevation threshold,
/// -190 dB channel-strength threshold.
struct RadioParams {
  double carrier_hz = 2e9;
  double bandwidth_hz = 1e8;
  double gain_ap_dbi = 30.0;
  double gain_user_sat_dbi = 30.0;
  double gain_user_terr_dbi = 40.0;
  double max_power_db = 10.0;
  // The max power figure is quoted in bare dB; we read it as dBW by
  // default, switchable to dBm.
  bool max_power_is_dbw = true;
  // NaN selects the thermal default -174 dBm/Hz + 10 log10(W), NF = 0 dB.
  double noise_power_dbm = std::numeric_limits<double>::quiet_NaN();
  double elevation_threshold_deg = 15.0;
  double pathloss_threshold_db = -190.0;

  double wavelength_m() const { return kSpeedOfLightMps / carrier_hz; }

  double max_power_w() const {
    const double dbw = max_power_is_dbw ? max_power_db : max_power_db - 30.0;
    return std::pow(10.0, dbw / 10.0);
  }

  bool valid() const { return carrier_hz > 0.0 && bandwidth_hz > 0.0; }
};

enum class UserGainClass { Satellite, Terrestrial };

/// One line-of-sight link: linear amplitude (path loss times sqrt of the
/// antenna gains), carrier phase, and the distance that produced them.
struct ChannelCoefficient {
  double amplitude = 0.0;   // w * sqrt(G_B * G_U), linear
  double phase_rad = 0.0;   // -2*pi*d/lambda wrapped into [0, 2*pi)
  double distance_m = 0.0;

  std::complex<double> value() const {
    return std::polar(amplitude, phase_rad);
  }
};

/// Free-space path loss 20 log10(4 pi d / lambda) in dB.
inline double free_space_pathloss_db(double d_m, double lambda_m) {
  if (d_m <= 0.0) {
    throw NonPositiveDistanceError("free_space_pathloss_db: distance must be positive");
  }
  return 20.0 * std::log10(4.0 * kPi * d_m / lambda_m);
}

/// Linear path-loss amplitude w = lambda / (4 pi d).  w^2 in linear power
/// is the inverse of the free-space path loss.
inline double pathloss_amplitude(double d_m, double lambda_m) {
  if (d_m <= 0.0) {
    throw NonPositiveDistanceError("pathloss_amplitude: distance must be positive");
  }
  return lambda_m / (4.0 * kPi * d_m);
}

inline double user_gain_dbi(UserGainClass cls, const RadioParams& radio) {
  return cls == UserGainClass::Satellite ? radio.gain_user_sat_dbi : radio.gain_user_terr_dbi;
}

inline ChannelCoefficient channel_coefficient(const EcefPosition& ap, const EcefPosition& user,
                                              UserGainClass user_class, const RadioParams& radio) {
  const double d = distance(ap, user);
  if (d <= 0.0) {
    throw NonPositiveDistanceError("channel_coefficient: coincident AP and user");
  }
  const double lambda = radio.wavelength_m();
  ChannelCoefficient h;
  h.distance_m = d;
  h.amplitude = pathloss_amplitude(d, lambda) *
                std::pow(10.0, (radio.gain_ap_dbi + user_gain_dbi(user_class, radio)) / 20.0);
  double phase = std::fmod(-2.0 * kPi * d / lambda, 2.0 * kPi);
  if (phase < 0.0) phase += 2.0 * kPi;
  h.phase_rad = phase;
  return h;
}

inline ChannelCoefficient channel_coefficient(const EcefPosition& ap, const GeodeticPosition& user,
                                              UserGainClass user_class, const RadioParams& radio,
                                              const EllipsoidParams& ell = EllipsoidParams::wgs84()) {
  return channel_coefficient(ap, lla_to_ecef(user, ell), user_class, radio);
}

/// Noise power in watts.  An explicit noise_power_dbm overrides the thermal
/// default of -174 dBm/Hz integrated over the bandwidth.
inline double noise_power_linear_w(const RadioParams& radio) {
  double dbm = radio.noise_power_dbm;
  if (std::isnan(dbm)) {
    dbm = -174.0 + 10.0 * std::log10(radio.bandwidth_hz);
  }
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace saginet
