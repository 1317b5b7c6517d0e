#pragma once

#include <cmath>

#include "phasebound/errors.hpp"

namespace phasebound {

/// A Lebesgue exponent: either a finite value >= 1 or +infinity.
///
/// The conjugate conventions 1' = inf and the coefficient exponent
/// p/(2-p) with 2/(2-2) = inf are represented as an explicit branch; no
/// IEEE infinity ever reaches pow().
class Exponent {
 public:
  explicit Exponent(double value) : value_(value), infinite_(false) {
    if (!(value >= 1.0) || !std::isfinite(value)) {
      throw ParameterError("Exponent: finite exponents must satisfy p >= 1");
    }
  }

  static Exponent infinity() { return Exponent(tag_infinity{}); }

  bool is_infinite() const { return infinite_; }

  /// Finite value; calling this on the infinite exponent is a logic error.
  double value() const {
    if (infinite_) throw ParameterError("Exponent: infinite exponent has no finite value");
    return value_;
  }

  /// Hoelder conjugate p' = p/(p-1), with 1' = inf and inf' = 1.
  Exponent conjugate() const {
    if (infinite_) return Exponent(1.0);
    if (value_ == 1.0) return infinity();
    return Exponent(value_ / (value_ - 1.0));
  }

  /// Half of this exponent (used for q = p'/2); inf/2 = inf.
  Exponent half() const {
    if (infinite_) return infinity();
    return Exponent(value_ / 2.0);
  }

  bool operator==(const Exponent& other) const {
    return infinite_ == other.infinite_ && (infinite_ || value_ == other.value_);
  }
  bool operator!=(const Exponent& other) const { return !(*this == other); }

 private:
  struct tag_infinity {};
  explicit Exponent(tag_infinity) : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

}  // namespace phasebound
