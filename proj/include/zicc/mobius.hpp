#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "zicc/angle.hpp"
#include "zicc/errors.hpp"

namespace zicc {

// |beta1| within this band of 1 is treated as the exact independence
// regime: the link is constant beta0*beta1 for every covariate.
inline constexpr double kUnitBeta1Band = 1e-6;

inline bool beta1_constant_regime(std::complex<double> beta1) {
  return std::abs(std::abs(beta1) - 1.0) <= kUnitBeta1Band;
}

// Raw-complex core of the regression link rot*(x+b1)/(1+conj(b1)x); kept
// separate so likelihood loops can call it without UnitComplex wrapping.
inline std::complex<double> mobius_apply_raw(std::complex<double> rot,
                                             std::complex<double> beta1,
                                             std::complex<double> x) {
  if (beta1_constant_regime(beta1)) {
    const std::complex<double> w = rot * beta1;
    return w / std::abs(w);
  }
  const std::complex<double> den = 1.0 + std::conj(beta1) * x;
  const double dm = std::abs(den);
  if (dm < 1e-14)
    throw NumericalError("mobius link: denominator modulus below 1e-14");
  const std::complex<double> out = rot * (x + beta1) / den;
  return out / std::abs(out);
}

struct MobiusLink {
  UnitComplex beta0;           // rotation
  std::complex<double> beta1;  // any finite complex; |beta1|=1 is the constant regime
};

inline UnitComplex link_apply(const MobiusLink& link, UnitComplex x) {
  return UnitComplex(mobius_apply_raw(link.beta0.value(), link.beta1, x.value()));
}

// Unique x with link_apply(link, x) == y; undefined in the constant regime.
inline UnitComplex link_invert(const MobiusLink& link, UnitComplex y) {
  if (beta1_constant_regime(link.beta1))
    throw std::domain_error("link_invert: |beta1| = 1 link is not invertible");
  const std::complex<double> w = y.value() / link.beta0.value();
  const std::complex<double> den = 1.0 - std::conj(link.beta1) * w;
  if (std::abs(den) < 1e-14)
    throw NumericalError("link_invert: denominator modulus below 1e-14");
  return UnitComplex((w - link.beta1) / den);
}

// Centered reparameterization arg mu = 2*atan(omega*tan(theta/2)),
// omega >= 0, equivalent to beta0 = 1, beta1 = (1-omega)/(1+omega).
struct OmegaLink {
  double omega;

  explicit OmegaLink(double w) : omega(w) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("OmegaLink: omega must be finite and >= 0");
  }
};

inline double omega_to_beta1(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("omega_to_beta1: omega must be finite and >= 0");
  return (1.0 - omega) / (1.0 + omega);
}

inline double beta1_to_omega(double beta1) {
  if (!(beta1 > -1.0 && beta1 <= 1.0))
    throw std::invalid_argument("beta1_to_omega: beta1 must lie in (-1, 1]");
  return (1.0 - beta1) / (1.0 + beta1);
}

inline Angle omega_link_apply(OmegaLink link, Angle theta_x) {
  const double t = theta_x.radians();
  if (link.omega == 0.0) return Angle(0.0);  // constant link at beta1 = 1
  // theta_x = +-pi is a removable singularity of the closed form
  if (t == -kPi) return Angle(kPi);
  return Angle(2.0 * std::atan(link.omega * std::tan(0.5 * t)));
}

}  // namespace zicc
