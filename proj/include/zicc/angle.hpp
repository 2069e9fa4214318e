#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "zicc/errors.hpp"

namespace zicc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduce to the canonical range [-pi, pi).
inline double wrap_radians(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("wrap: non-finite angle");
  double y = std::remainder(x, kTwoPi);  // (-pi, pi], ties to even
  if (y >= kPi) y -= kTwoPi;
  return y + 0.0;  // normalize -0.0
}

// Reduce to [0, 2pi); used for arc sweeps.
inline double sweep_radians(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("sweep: non-finite angle");
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return y;
}

// An angle held in [-pi, pi); every constructor and operation rewraps.
class Angle {
 public:
  constexpr Angle() : value_(0.0) {}
  explicit Angle(double radians) : value_(wrap_radians(radians)) {}

  double radians() const { return value_; }
  double degrees() const { return value_ * 180.0 / kPi; }

  friend bool operator==(Angle a, Angle b) { return a.value_ == b.value_; }
  friend bool operator!=(Angle a, Angle b) { return a.value_ != b.value_; }

 private:
  double value_;
};

inline Angle wrap(double radians) { return Angle(radians); }

// Signed shortest rotation from b to a.
inline Angle angle_difference(Angle a, Angle b) {
  return Angle(a.radians() - b.radians());
}

// Unit-modulus complex value; constructors renormalize (tolerance 1e-12).
class UnitComplex {
 public:
  UnitComplex() : z_(1.0, 0.0) {}

  explicit UnitComplex(std::complex<double> z) : z_(z) {
    const double m2 = std::norm(z_);
    if (!std::isfinite(m2) || m2 < 1e-28)
      throw NumericalError("UnitComplex: modulus too small to normalize");
    if (std::abs(m2 - 1.0) > 1e-12) z_ /= std::sqrt(m2);
  }

  static UnitComplex from_angle(Angle a) {
    UnitComplex u;
    u.z_ = std::polar(1.0, a.radians());
    return u;
  }

  std::complex<double> value() const { return z_; }
  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  Angle arg() const { return Angle(std::arg(z_)); }

 private:
  std::complex<double> z_;
};

struct CircularSummary {
  Angle circular_mean;      // valid only when mean_defined
  double resultant_length;  // in [0, 1]
  double dispersion;        // 1 - resultant_length
  bool mean_defined;

  Angle mean() const {
    if (!mean_defined)
      throw DegenerateMeanError("circular mean undefined: resultant length below 1e-12");
    return circular_mean;
  }
};

inline CircularSummary circular_mean_and_dispersion(std::span<const double> angles) {
  if (angles.empty())
    throw std::invalid_argument("circular_mean_and_dispersion: empty sample");
  double c = 0.0, s = 0.0;
  for (double a : angles) {
    c += std::cos(a);
    s += std::sin(a);
  }
  const double n = static_cast<double>(angles.size());
  c /= n;
  s /= n;
  double rbar = std::sqrt(c * c + s * s);
  if (rbar > 1.0) rbar = 1.0;
  CircularSummary out;
  out.resultant_length = rbar;
  out.dispersion = 1.0 - rbar;
  out.mean_defined = rbar >= 1e-12;
  out.circular_mean = out.mean_defined ? Angle(std::atan2(s, c)) : Angle(0.0);
  return out;
}

inline CircularSummary circular_mean_and_dispersion(std::span<const Angle> angles) {
  std::vector<double> raw;
  raw.reserve(angles.size());
  for (Angle a : angles) raw.push_back(a.radians());
  return circular_mean_and_dispersion(std::span<const double>(raw));
}

}  // namespace zicc
