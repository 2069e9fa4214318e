#pragma once

#include <cmath>
#include <stdexcept>

#include "zicc/angle.hpp"
#include "zicc/rng.hpp"

namespace zicc {

// Best-Fisher rejection sampler for VM(mu, kappa).
inline Angle von_mises_sample(Angle mu, double kappa, Rng& rng) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("von_mises_sample: kappa must be finite and >= 0");
  if (kappa < 1e-10) return Angle(rng.uniform(-kPi, kPi));

  const double a = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double b = (a - std::sqrt(2.0 * a)) / (2.0 * kappa);
  const double r = (1.0 + b * b) / (2.0 * b);

  double f;
  for (;;) {
    const double u1 = rng.u01();
    const double u2 = rng.u01();
    const double z = std::cos(kPi * u1);
    f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0) break;
    if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  const double sign = rng.u01() > 0.5 ? 1.0 : -1.0;
  return Angle(mu.radians() + sign * std::acos(f));
}

}  // namespace zicc
