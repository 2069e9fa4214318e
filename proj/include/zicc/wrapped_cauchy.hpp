#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "zicc/angle.hpp"
#include "zicc/rng.hpp"

namespace zicc {

// The circle self-map eta(z) = (psi - z) / (1 - conj(psi) z), |psi| < 1.
// It is an involution, and for uniform z the image arg is WC(arg psi, |psi|)
// distributed. Its boundary derivative d/dt arg eta(e^{it}) equals
// 2*pi*f_W(t), which turns arc masses into plain sweeps of arg eta.
inline std::complex<double> mobius_eta(std::complex<double> psi, std::complex<double> z) {
  return (psi - z) / (1.0 - std::conj(psi) * z);
}

class WrappedCauchy {
 public:
  WrappedCauchy(Angle mu, double rho) : mu_(mu), rho_(rho) {
    if (!(rho >= 0.0 && rho < 1.0))
      throw std::invalid_argument("WrappedCauchy: rho must lie in [0, 1)");
  }

  Angle mu() const { return mu_; }
  double rho() const { return rho_; }
  std::complex<double> psi() const { return std::polar(rho_, mu_.radians()); }

  double pdf(Angle theta) const {
    const double c = std::cos(theta.radians() - mu_.radians());
    return (1.0 - rho_ * rho_) / (kTwoPi * (1.0 + rho_ * rho_ - 2.0 * rho_ * c));
  }

  double log_pdf(Angle theta) const {
    const double c = std::cos(theta.radians() - mu_.radians());
    return std::log1p(-rho_ * rho_) - std::log(kTwoPi) -
           std::log(1.0 + rho_ * rho_ - 2.0 * rho_ * c);
  }

  // Probability mass of the counterclockwise arc from `from` to `to`.
  // Exact: the eta image of the arc is swept uniformly.
  double arc_mass(Angle from, Angle to) const {
    if (from == to) return 0.0;
    const double af = std::arg(mobius_eta(psi(), std::polar(1.0, from.radians())));
    const double at = std::arg(mobius_eta(psi(), std::polar(1.0, to.radians())));
    return sweep_radians(at - af) / kTwoPi;
  }

  // Mass accumulated counterclockwise from mu - pi (the antimode) to theta.
  double cdf(Angle theta) const {
    return arc_mass(Angle(mu_.radians() - kPi), theta);
  }

  Angle sample(Rng& rng) const {
    const std::complex<double> z = std::polar(1.0, rng.uniform(-kPi, kPi));
    return Angle(std::arg(mobius_eta(psi(), z)));
  }

 private:
  Angle mu_;
  double rho_;
};

// Wrapped Cauchy restricted to the arc from a to b that contains
// support_contains, renormalized. Sampling maps the support endpoints
// through eta, draws uniformly on the image arc, and maps back through
// eta itself (involution), so cost is O(1) however small the support.
class TruncatedWrappedCauchy {
 public:
  TruncatedWrappedCauchy(WrappedCauchy base, Angle a, Angle b, Angle support_contains)
      : base_(base) {
    const double sweep_ab = sweep_radians(b.radians() - a.radians());
    const double sweep_ac = sweep_radians(support_contains.radians() - a.radians());
    if (sweep_ab == 0.0) {
      if (sweep_ac == 0.0)
        throw std::invalid_argument("TruncatedWrappedCauchy: zero-length support arc");
      // a == b with an interior point elsewhere: the full circle minus a point
      full_circle_ = true;
      lo_ = a;
      sweep_ = kTwoPi;
      normalizer_ = 1.0;
      return;
    }
    full_circle_ = false;
    if (sweep_ac <= sweep_ab) {
      lo_ = a;
      sweep_ = sweep_ab;
    } else {
      lo_ = b;
      sweep_ = kTwoPi - sweep_ab;
    }
    normalizer_ = base_.arc_mass(lo_, Angle(lo_.radians() + sweep_));
    if (!(normalizer_ > 0.0))
      throw NumericalError("TruncatedWrappedCauchy: vanishing normalizer");
  }

  const WrappedCauchy& base() const { return base_; }
  double normalizer() const { return normalizer_; }
  double support_sweep() const { return sweep_; }
  Angle support_lo() const { return lo_; }

  bool in_support(Angle t) const {
    if (full_circle_) return t != lo_;
    const double s = sweep_radians(t.radians() - lo_.radians());
    return s > 0.0 && s < sweep_;
  }

  double pdf(Angle t) const {
    return in_support(t) ? base_.pdf(t) / normalizer_ : 0.0;
  }

  Angle sample(Rng& rng) const {
    if (full_circle_) return base_.sample(rng);
    const std::complex<double> psi = base_.psi();
    const double elo = std::arg(mobius_eta(psi, std::polar(1.0, lo_.radians())));
    const double ehi = std::arg(mobius_eta(psi, std::polar(1.0, lo_.radians() + sweep_)));
    const double image_sweep = sweep_radians(ehi - elo);
    const std::complex<double> xi = std::polar(1.0, elo + rng.uniform(0.0, image_sweep));
    return Angle(std::arg(mobius_eta(psi, xi)));
  }

 private:
  WrappedCauchy base_;
  Angle lo_;       // support is the ccw arc lo .. lo + sweep
  double sweep_;
  double normalizer_;
  bool full_circle_;
};

}  // namespace zicc
