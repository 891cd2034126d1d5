#pragma once

#include <stdexcept>
#include <string>

namespace saginet {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoincidentPointsError : Error {
  using Error::Error;
};
struct NonPositiveDistanceError : Error {
  using Error::Error;
};
struct InvalidSpecError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct InsufficientSatellitesError : Error {
  using Error::Error;
};
struct MalformedGraphError : Error {
  using Error::Error;
};
struct InfeasibleError : Error {
  using Error::Error;
};
struct UnboundedError : Error {
  using Error::Error;
};
struct NodeLimitError : Error {
  using Error::Error;
};
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct NoSensingLinkError : Error {
  using Error::Error;
};
struct NoSensingApError : Error {
  using Error::Error;
};
struct NameCollisionError : Error {
  using Error::Error;
};

}  // namespace saginet
