#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zicc/angle.hpp"
#include "zicc/errors.hpp"
#include "zicc/mobius.hpp"
#include "zicc/wrapped_cauchy.hpp"

namespace zicc {

enum class ModelVariant { ModelI, ModelII, ModelIII, SpecialCase };

inline std::string variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::ModelI: return "I";
    case ModelVariant::ModelII: return "II";
    case ModelVariant::ModelIII: return "III";
    case ModelVariant::SpecialCase: return "special";
  }
  return "?";
}

inline ModelVariant variant_from_name(const std::string& s) {
  if (s == "I" || s == "i" || s == "1") return ModelVariant::ModelI;
  if (s == "II" || s == "ii" || s == "2") return ModelVariant::ModelII;
  if (s == "III" || s == "iii" || s == "3") return ModelVariant::ModelIII;
  if (s == "special" || s == "S") return ModelVariant::SpecialCase;
  throw UsageError("unknown model variant: " + s);
}

// One regression stage: rotation arg theta0, link coefficient r*e^{i theta1},
// error concentration rho, and the stage-1 group rotation gamma. In
// special-case mode theta0 = theta1 = 0 and r is the signed real coefficient.
struct StageParams {
  double theta0 = 0.0;
  double r = 0.5;
  double theta1 = 0.0;
  double rho = 0.5;
  double gamma = 0.0;

  std::complex<double> beta0() const { return std::polar(1.0, theta0); }
  std::complex<double> beta1() const {
    return {r * std::cos(theta1), r * std::sin(theta1)};
  }
};

struct ModelSpec {
  ModelVariant variant = ModelVariant::ModelI;
  double delta_x = 0.0;
  double delta_y = 0.0;
  bool estimate_deltas = false;
  double a_rho = 2.0;
  bool unit_b1 = false;
  bool group_effect = false;
  bool exact_latent_x = false;  // opt-in stage-1 correction of the latent-X draw

  void validate() const {
    if (!(a_rho > 1.0))
      throw std::invalid_argument("ModelSpec: a_rho must exceed 1 (posterior propriety)");
    if (!(delta_x >= 0.0 && delta_x < kPi) || !(delta_y >= 0.0 && delta_y < kPi))
      throw std::invalid_argument("ModelSpec: censoring thresholds must lie in [0, pi)");
    if (variant == ModelVariant::ModelII && (delta_x != 0.0 || delta_y != 0.0))
      throw std::invalid_argument("ModelSpec: Model II requires delta_x = delta_y = 0");
    if (variant == ModelVariant::ModelIII && delta_x != 0.0)
      throw std::invalid_argument("ModelSpec: Model III requires delta_x = 0");
    if (estimate_deltas && variant == ModelVariant::ModelII)
      throw std::invalid_argument("ModelSpec: Model II has no thresholds to estimate");
    if (unit_b1 && variant == ModelVariant::SpecialCase)
      throw std::invalid_argument("ModelSpec: unit_b1 is not available in special-case mode");
  }
};

struct Observation {
  double theta_v = 0.0;
  double theta_x = 0.0;
  double theta_y = 0.0;
  int group = 0;  // W indicator, used when group_effect
};

// Latent uncensored angles; equal to the observed angles except on
// censored records, where they lie strictly inside the censoring window.
struct LatentState {
  std::vector<double> theta_x_star;
  std::vector<double> theta_y_star;
};

// Observation map: latent angles inside (-delta, delta) are recorded as 0.
inline double censor(double theta_star, double delta) {
  return std::abs(theta_star) < delta ? 0.0 : theta_star;
}

inline Angle censor(Angle theta_star, double delta) {
  return Angle(censor(theta_star.radians(), delta));
}

inline bool is_censored_y(const Observation& o, const ModelSpec& spec) {
  return spec.delta_y > 0.0 && o.theta_y == 0.0;
}

inline bool is_censored_x(const Observation& o, const ModelSpec& spec) {
  return spec.delta_x > 0.0 && o.theta_x == 0.0;
}

// A nonzero observation strictly inside the censoring window is impossible
// under the model; fail loudly instead of fitting a zero-likelihood dataset.
inline void validate_dataset(const std::vector<Observation>& data, const ModelSpec& spec) {
  spec.validate();
  if (data.empty()) throw DataError("empty dataset");
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Observation& o = data[i];
    if (!std::isfinite(o.theta_v) || !std::isfinite(o.theta_x) || !std::isfinite(o.theta_y))
      throw DataError("record " + std::to_string(i + 1) + ": non-finite angle");
    if (o.theta_y != 0.0 && std::abs(wrap_radians(o.theta_y)) < spec.delta_y)
      throw DataError("record " + std::to_string(i + 1) +
                      ": nonzero response inside the censoring window (-delta_y, delta_y)");
    if (o.theta_x != 0.0 && std::abs(wrap_radians(o.theta_x)) < spec.delta_x)
      throw DataError("record " + std::to_string(i + 1) +
                      ": nonzero covariate inside the censoring window (-delta_x, delta_x)");
    if (spec.group_effect && o.group != 0 && o.group != 1)
      throw DataError("record " + std::to_string(i + 1) + ": group indicator must be 0 or 1");
  }
}

inline LatentState initial_latent_state(const std::vector<Observation>& data,
                                        const ModelSpec& spec) {
  LatentState latent;
  latent.theta_x_star.reserve(data.size());
  latent.theta_y_star.reserve(data.size());
  for (const Observation& o : data) {
    latent.theta_x_star.push_back(is_censored_x(o, spec) ? 0.0 : wrap_radians(o.theta_x));
    latent.theta_y_star.push_back(is_censored_y(o, spec) ? 0.0 : wrap_radians(o.theta_y));
  }
  return latent;
}

inline void check_latent_consistent(const LatentState& latent,
                                    const std::vector<Observation>& data,
                                    const ModelSpec& spec) {
  if (latent.theta_x_star.size() != data.size() || latent.theta_y_star.size() != data.size())
    throw std::invalid_argument("latent state size mismatch");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (is_censored_x(data[i], spec)) {
      if (!(std::abs(latent.theta_x_star[i]) < spec.delta_x))
        throw std::invalid_argument("latent covariate outside the censoring window at record " +
                                    std::to_string(i + 1));
    } else if (latent.theta_x_star[i] != wrap_radians(data[i].theta_x)) {
      throw std::invalid_argument("latent covariate differs from uncensored observation at record " +
                                  std::to_string(i + 1));
    }
    if (is_censored_y(data[i], spec)) {
      if (!(std::abs(latent.theta_y_star[i]) < spec.delta_y))
        throw std::invalid_argument("latent response outside the censoring window at record " +
                                    std::to_string(i + 1));
    } else if (latent.theta_y_star[i] != wrap_radians(data[i].theta_y)) {
      throw std::invalid_argument("latent response differs from uncensored observation at record " +
                                  std::to_string(i + 1));
    }
  }
}

// log f_W given cos(theta - mu); the likelihood hot path never takes an arg.
inline double wc_log_density_from_cos(double rho, double cos_dev) {
  return std::log1p(-rho * rho) - std::log(kTwoPi) -
         std::log(1.0 + rho * rho - 2.0 * rho * cos_dev);
}

inline std::complex<double> stage1_mean_raw(const StageParams& p, std::complex<double> x_star,
                                            int w) {
  const std::complex<double> rot = std::polar(1.0, p.theta0 + (w ? p.gamma : 0.0));
  return mobius_apply_raw(rot, p.beta1(), x_star);
}

inline std::complex<double> stage2_mean_raw(const StageParams& p, std::complex<double> v) {
  return mobius_apply_raw(p.beta0(), p.beta1(), v);
}

// Predicted mean direction of the response stage, with the group rotation
// beta0*gamma^w applied for w = 1.
inline Angle stage1_mean(const StageParams& p, UnitComplex x_star, int w = 0) {
  return Angle(std::arg(stage1_mean_raw(p, x_star.value(), w)));
}

inline Angle stage2_mean(const StageParams& p, UnitComplex v) {
  return Angle(std::arg(stage2_mean_raw(p, v.value())));
}

// Sum of log f_W(theta_Y*_i; mu_1i, rho_1): on the augmented space the
// K * f_TW term of a censored record reduces to the plain wrapped Cauchy
// density at the latent value, window membership already enforced.
inline double log_augmented_likelihood_stage1(const StageParams& p, const LatentState& latent,
                                              const std::vector<Observation>& data,
                                              const ModelSpec& spec) {
  check_latent_consistent(latent, data, spec);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::complex<double> x = std::polar(1.0, latent.theta_x_star[i]);
    const std::complex<double> mu = stage1_mean_raw(p, x, spec.group_effect ? data[i].group : 0);
    const std::complex<double> y = std::polar(1.0, latent.theta_y_star[i]);
    const double cos_dev = y.real() * mu.real() + y.imag() * mu.imag();
    total += wc_log_density_from_cos(p.rho, cos_dev);
  }
  return total;
}

inline double log_augmented_likelihood_stage2(const StageParams& p, const LatentState& latent,
                                              const std::vector<Observation>& data,
                                              const ModelSpec& spec) {
  check_latent_consistent(latent, data, spec);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::complex<double> mu = stage2_mean_raw(p, std::polar(1.0, data[i].theta_v));
    const std::complex<double> x = std::polar(1.0, latent.theta_x_star[i]);
    const double cos_dev = x.real() * mu.real() + x.imag() * mu.imag();
    total += wc_log_density_from_cos(p.rho, cos_dev);
  }
  return total;
}

// Priors: flat on angles, exp(-r^2) on the link modulus, Beta(a_rho, a_rho)
// on rho. Special-case mode replaces the r prior with uniform on [-1, 1].
inline double log_prior(const StageParams& p, const ModelSpec& spec, int stage) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (!(p.rho >= 0.0 && p.rho < 1.0)) return kNegInf;
  double lp = 0.0;
  if (p.rho == 0.0 || p.rho == 1.0) return kNegInf;  // Beta(a,a) boundary, a > 1
  lp += (spec.a_rho - 1.0) * (std::log(p.rho) + std::log1p(-p.rho));
  if (spec.variant == ModelVariant::SpecialCase) {
    if (!(p.r >= -1.0 && p.r <= 1.0)) return kNegInf;
  } else if (!(stage == 2 && spec.unit_b1)) {
    if (!(p.r >= 0.0)) return kNegInf;
    lp += -p.r * p.r;
  }
  return lp;
}

// Eq-style full conditional of one stage's parameter block: its prior plus
// that stage's augmented likelihood. Conditioning on the other stage enters
// only through the latent values, so `other` is unused.
inline double log_full_conditional_theta(const StageParams& params, const StageParams& other,
                                         const LatentState& latent,
                                         const std::vector<Observation>& data,
                                         const ModelSpec& spec, int stage) {
  (void)other;
  if (stage != 1 && stage != 2) throw std::invalid_argument("stage must be 1 or 2");
  const double lp = log_prior(params, spec, stage);
  if (!std::isfinite(lp)) return lp;
  return lp + (stage == 1 ? log_augmented_likelihood_stage1(params, latent, data, spec)
                          : log_augmented_likelihood_stage2(params, latent, data, spec));
}

// Full conditional of one latent angle: a point mass at the observation for
// uncensored records, a truncated wrapped Cauchy on the censoring window
// otherwise. stage 1 -> theta_Y*_i, stage 2 -> theta_X*_i.
struct LatentConditional {
  bool point_mass;
  Angle point;
  std::optional<TruncatedWrappedCauchy> dist;
};

inline LatentConditional latent_full_conditional(const StageParams& s1, const StageParams& s2,
                                                 const LatentState& latent,
                                                 const std::vector<Observation>& data,
                                                 const ModelSpec& spec, std::size_t record,
                                                 int stage) {
  if (record >= data.size()) throw std::invalid_argument("record index out of range");
  const Observation& o = data[record];
  LatentConditional out;
  if (stage == 2) {
    if (!is_censored_x(o, spec)) {
      out.point_mass = true;
      out.point = Angle(o.theta_x);
      return out;
    }
    const Angle mu = stage2_mean(s2, UnitComplex::from_angle(Angle(o.theta_v)));
    out.point_mass = false;
    out.dist.emplace(WrappedCauchy(mu, s2.rho), Angle(-spec.delta_x), Angle(spec.delta_x),
                     Angle(0.0));
    return out;
  }
  if (stage != 1) throw std::invalid_argument("stage must be 1 or 2");
  if (!is_censored_y(o, spec)) {
    out.point_mass = true;
    out.point = Angle(o.theta_y);
    return out;
  }
  const Angle mu = stage1_mean(s1, UnitComplex::from_angle(Angle(latent.theta_x_star[record])),
                               spec.group_effect ? o.group : 0);
  out.point_mass = false;
  out.dist.emplace(WrappedCauchy(mu, s1.rho), Angle(-spec.delta_y), Angle(spec.delta_y),
                   Angle(0.0));
  return out;
}

}  // namespace zicc
