#pragma once

#include <stdexcept>
#include <string>

namespace assocperc {

// Parameter outside the documented domain (maps to CLI exit code 2).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter inside the domain but beyond an enumeration / memory guard
// (CLI exit code 3).
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Reading or writing a file failed (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidParameter(message);
}

inline void require_probability(double p, const char* name = "p") {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter(std::string(name) + " must lie in [0, 1], got " +
                           std::to_string(p));
  }
}

}  // namespace assocperc
