#pragma once

#include <cmath>

#include "saginet/errors.hpp"

namespace saginet {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEarthMeanRadiusM = 6371000.0;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Geodetic position: latitude/longitude in degrees, altitude in meters
/// above the reference ellipsoid.
struct GeodeticPosition {
  double latitude_deg = 0.0;   // [-90, 90]
  double longitude_deg = 0.0;  // [-180, 180]
  double altitude_m = 0.0;

  bool valid() const {
    return latitude_deg >= -90.0 && latitude_deg <= 90.0 &&
           longitude_deg >= -180.0 && longitude_deg <= 180.0 &&
           altitude_m >= -500.0;
  }
};

/// Earth-centered, Earth-fixed Cartesian position in meters.  The x axis
/// pierces (lat 0, lon 0), z the north pole.
struct EcefPosition {
  double x_m = 0.0;
  double y_m = 0.0;
  double z_m = 0.0;
};

inline EcefPosition operator-(const EcefPosition& a, const EcefPosition& b) {
  return {a.x_m - b.x_m, a.y_m - b.y_m, a.z_m - b.z_m};
}

inline double dot(const EcefPosition& a, const EcefPosition& b) {
  return a.x_m * b.x_m + a.y_m * b.y_m + a.z_m * b.z_m;
}

inline double norm(const EcefPosition& a) { return std::sqrt(dot(a, a)); }

inline double distance(const EcefPosition& a, const EcefPosition& b) {
  return norm(a - b);
}

/// Local tangent-frame vector at some reference geodetic point.
struct EnuVector {
  double east_m = 0.0;
  double north_m = 0.0;
  double up_m = 0.0;
};

/// Reference ellipsoid.  Defaults to WGS84.
struct EllipsoidParams {
  double semi_major_m = 6378137.0;
  double semi_minor_m = 6356752.314245;

  double first_eccentricity_sq() const {
    const double a = semi_major_m, b = semi_minor_m;
    return (a * a - b * b) / (a * a);
  }

  double first_eccentricity() const { return std::sqrt(first_eccentricity_sq()); }

  /// Prime vertical radius of curvature N(B).  Always >= semi-major axis.
  double prime_vertical_radius(double lat_rad) const {
    const double s = std::sin(lat_rad);
    return semi_major_m / std::sqrt(1.0 - first_eccentricity_sq() * s * s);
  }

  static EllipsoidParams wgs84() { return EllipsoidParams{}; }
};

/// Geodetic -> ECEF:
///   x = (N+H) cosB cosL,  y = (N+H) cosB sinL,  z = (N(1-e^2)+H) sinB
inline EcefPosition lla_to_ecef(const GeodeticPosition& p,
                                const EllipsoidParams& ell = EllipsoidParams::wgs84()) {
  const double lat = deg2rad(p.latitude_deg);
  const double lon = deg2rad(p.longitude_deg);
  const double n = ell.prime_vertical_radius(lat);
  const double cb = std::cos(lat), sb = std::sin(lat);
  const double cl = std::cos(lon), sl = std::sin(lon);
  return {(n + p.altitude_m) * cb * cl,
          (n + p.altitude_m) * cb * sl,
          (n * (1.0 - ell.first_eccentricity_sq()) + p.altitude_m) * sb};
}

/// ECEF -> ENU in the tangent frame of ref_point.
inline EnuVector ecef_to_enu(const EcefPosition& target, const GeodeticPosition& ref_point,
                             const EllipsoidParams& ell = EllipsoidParams::wgs84()) {
  const EcefPosition d = target - lla_to_ecef(ref_point, ell);
  const double lat = deg2rad(ref_point.latitude_deg);
  const double lon = deg2rad(ref_point.longitude_deg);
  const double cb = std::cos(lat), sb = std::sin(lat);
  const double cl = std::cos(lon), sl = std::sin(lon);
  EnuVector enu;
  enu.east_m = -d.x_m * sl + d.y_m * cl;
  enu.north_m = -d.x_m * sb * cl - d.y_m * sb * sl + d.z_m * cb;
  enu.up_m = d.x_m * cb * cl + d.y_m * cb * sl + d.z_m * sb;
  return enu;
}

/// Elevation angle of `ap` seen from `user`, in radians within [-pi/2, pi/2].
/// atan2 keeps the zenith case exact: NORTH = EAST = 0, UP > 0 -> +pi/2.
inline double elevation_angle(const EcefPosition& ap, const GeodeticPosition& user,
                              const EllipsoidParams& ell = EllipsoidParams::wgs84()) {
  const EnuVector enu = ecef_to_enu(ap, user, ell);
  const double horizontal = std::hypot(enu.north_m, enu.east_m);
  return std::atan2(enu.up_m, horizontal);
}

/// Distance from Earth's center to the infinite line through satellites a
/// and b:  sqrt(|a|^2 |b|^2 - (a.b)^2) / |a - b|.
inline double isl_min_distance_to_center(const EcefPosition& a, const EcefPosition& b) {
  const double sep = distance(a, b);
  if (sep < 1e-6) {
    throw CoincidentPointsError("isl_min_distance_to_center: coincident satellite positions");
  }
  const double na2 = dot(a, a);
  const double nb2 = dot(b, b);
  const double ab = dot(a, b);
  // Cauchy-Schwarz keeps the radicand non-negative; clamp rounding residue.
  const double radicand = std::max(0.0, na2 * nb2 - ab * ab);
  return std::sqrt(radicand) / sep;
}

/// Parameter of the closest point to the origin along a + t(b - a).
/// t in [0,1] means the closest point lies between the satellites.
inline double isl_closest_point_parameter(const EcefPosition& a, const EcefPosition& b) {
  const EcefPosition d = b - a;
  const double dd = dot(d, d);
  if (dd < 1e-12) {
    throw CoincidentPointsError("isl_closest_point_parameter: coincident satellite positions");
  }
  return -dot(a, d) / dd;
}

}  // namespace saginet
