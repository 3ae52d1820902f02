#ifndef GYROVP_ERROR_HPP
#define GYROVP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gyrovp {

/// Evaluation of a singular kernel at its singularity (coincident points in
/// sharp mode).
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite state detected while stepping.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double t)
      : std::runtime_error(what + " at t=" + std::to_string(t)), time(t) {}
  double time;
};

/// Particle-charge distance fell below the hard floor.
class NearCollisionError : public std::runtime_error {
 public:
  NearCollisionError(double dist, double t)
      : std::runtime_error("particle-charge distance " + std::to_string(dist) +
                           " below floor at t=" + std::to_string(t)),
        distance(dist),
        time(t) {}
  double distance;
  double time;
};

/// Malformed or inconsistent configuration; carries the offending key and the
/// 1-based line number (0 when not tied to a line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key_ = "", int line_ = 0)
      : std::runtime_error(line_ > 0 ? message + " (line " + std::to_string(line_) + ")"
                                     : message),
        key(std::move(key_)),
        line(line_) {}
  std::string key;
  int line;
};

}  // namespace gyrovp

#endif  // GYROVP_ERROR_HPP
