#pragma once

#include <stdexcept>
#include <string>

namespace phasebound {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or grid mismatch between values that must live on the same grid.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range or unsatisfiable parameter (p < 1, width unresolvable, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis of the requested quantity is violated
/// (f = g where a ratio needs f != g, equal supports, non-real spectrum, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// File read/write failure, including malformed data files.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (bad flag combinations, malformed config file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace phasebound
