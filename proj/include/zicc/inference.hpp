#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zicc/angle.hpp"
#include "zicc/errors.hpp"
#include "zicc/mcmc.hpp"
#include "zicc/model.hpp"
#include "zicc/wrapped_cauchy.hpp"

namespace zicc {

enum class ParamKind { Circular, Linear };

struct HpdInterval {
  double low = 0.0;
  double high = 0.0;
  bool wide_warning = false;  // circular arc longer than pi: likely multimodal
};

struct SummaryEntry {
  std::string name;
  ParamKind kind = ParamKind::Linear;
  double estimate = 0.0;  // mean, or circular mean
  double spread = 0.0;    // sd, or circular dispersion
  HpdInterval hpd;
  double geweke_z = 0.0;
  bool geweke_valid = false;
};

// Linear: arithmetic mean and (n-1) sd. Circular: circular mean and 1 - Rbar.
inline SummaryEntry summarize_series(const std::string& name, std::span<const double> draws,
                                     ParamKind kind) {
  if (draws.empty()) throw std::invalid_argument("summarize: empty series");
  SummaryEntry e;
  e.name = name;
  e.kind = kind;
  if (kind == ParamKind::Circular) {
    CircularSummary s = circular_mean_and_dispersion(draws);
    e.estimate = s.mean().radians();
    e.spread = s.dispersion;
  } else {
    double m = 0.0;
    for (double v : draws) m += v;
    m /= double(draws.size());
    double ss = 0.0;
    for (double v : draws) ss += (v - m) * (v - m);
    e.estimate = m;
    e.spread = draws.size() > 1 ? std::sqrt(ss / double(draws.size() - 1)) : 0.0;
  }
  return e;
}

// Shortest window over sorted draws containing ceil(level * n) of them.
// Circular draws are rotated so their circular mean sits at 0 first, then
// the window is found on the unwrapped values and rotated back.
inline HpdInterval hpd_interval(std::vector<double> draws, double level, ParamKind kind) {
  if (draws.size() < 2) throw std::invalid_argument("hpd_interval: need at least 2 draws");
  if (!(level > 0.0 && level <= 1.0))
    throw std::invalid_argument("hpd_interval: level must lie in (0, 1]");
  const std::size_t n = draws.size();
  std::size_t m = static_cast<std::size_t>(std::ceil(level * double(n)));
  m = std::clamp<std::size_t>(m, 2, n);

  double rotation = 0.0;
  if (kind == ParamKind::Circular) {
    CircularSummary s = circular_mean_and_dispersion(std::span<const double>(draws));
    rotation = s.mean_defined ? s.circular_mean.radians() : 0.0;
    for (double& v : draws) v = wrap_radians(v - rotation);
  }
  std::sort(draws.begin(), draws.end());
  std::size_t best = 0;
  double best_width = draws[m - 1] - draws[0];
  for (std::size_t i = 1; i + m <= n; ++i) {
    const double w = draws[i + m - 1] - draws[i];
    if (w < best_width) {
      best_width = w;
      best = i;
    }
  }
  HpdInterval out;
  if (kind == ParamKind::Circular) {
    out.low = wrap_radians(draws[best] + rotation);
    out.high = wrap_radians(draws[best + m - 1] + rotation);
    out.wide_warning = best_width > kPi;
  } else {
    out.low = draws[best];
    out.high = draws[best + m - 1];
  }
  return out;
}

inline bool hpd_covers(const HpdInterval& hpd, double truth, ParamKind kind) {
  if (kind == ParamKind::Linear) return hpd.low <= truth && truth <= hpd.high;
  const double arc = sweep_radians(hpd.high - hpd.low);
  return sweep_radians(wrap_radians(truth) - hpd.low) <= arc;
}

namespace detail {

// Bartlett lag-window estimate of the spectral variance at frequency zero.
inline double spectral_variance(std::span<const double> x) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= double(n);
  const std::size_t bw = static_cast<std::size_t>(std::floor(std::sqrt(double(n))));
  double s = 0.0;
  for (std::size_t k = 0; k <= bw; ++k) {
    double g = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) g += (x[t] - mean) * (x[t + k] - mean);
    g /= double(n);
    s += (k == 0) ? g : 2.0 * (1.0 - double(k) / double(bw + 1)) * g;
  }
  return s;
}

}  // namespace detail

// Geweke convergence statistic comparing the first and last stretches of a
// chain scalar series. Circular parameters should be cosine-transformed by
// the caller first.
inline double geweke_z(std::span<const double> series, double first_frac = 0.1,
                       double last_frac = 0.5) {
  const std::size_t n = series.size();
  if (n < 1000) throw std::invalid_argument("geweke_z: need at least 1000 kept draws");
  const std::size_t na = static_cast<std::size_t>(std::floor(first_frac * double(n)));
  const std::size_t nb = static_cast<std::size_t>(std::floor(last_frac * double(n)));
  if (na < 10 || nb < 10) throw std::invalid_argument("geweke_z: window fractions too small");
  auto head = series.subspan(0, na);
  auto tail = series.subspan(n - nb, nb);
  double ma = 0.0, mb = 0.0;
  for (double v : head) ma += v;
  for (double v : tail) mb += v;
  ma /= double(na);
  mb /= double(nb);
  const double sa = detail::spectral_variance(head);
  const double sb = detail::spectral_variance(tail);
  const double denom = sa / double(na) + sb / double(nb);
  if (!(denom > 0.0)) throw NumericalError("geweke_z: zero spectral variance");
  return (ma - mb) / std::sqrt(denom);
}

inline std::vector<SummaryEntry> summarize_chain(const Chain& chain) {
  if (chain.size() == 0) throw std::invalid_argument("summarize_chain: empty chain");
  std::vector<SummaryEntry> out;
  for (const std::string& name : chain.param_names) {
    const std::vector<double> series = chain.series(name);
    const ParamKind kind = param_is_circular(name) ? ParamKind::Circular : ParamKind::Linear;
    SummaryEntry e = summarize_series(name, series, kind);
    if (series.size() >= 4) e.hpd = hpd_interval(series, 0.95, kind);
    if (series.size() >= 1000) {
      std::vector<double> g = series;
      if (kind == ParamKind::Circular)
        for (double& v : g) v = std::cos(v);
      try {
        e.geweke_z = geweke_z(g);
        e.geweke_valid = true;
      } catch (const NumericalError&) {
        e.geweke_valid = false;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

// Fraction of stored draws whose stage parameters satisfy the predicate.
inline double prob_event(const Chain& chain,
                         const std::function<bool(const StageParams&, const StageParams&)>& pred) {
  if (chain.size() == 0) throw std::invalid_argument("prob_event: empty chain");
  std::size_t hits = 0;
  for (std::size_t k = 0; k < chain.size(); ++k)
    if (pred(chain.stage1_at(k), chain.stage2_at(k))) ++hits;
  return double(hits) / double(chain.size());
}

enum class PredictiveHorizon { Stage1, Stage2, Composed };

inline PredictiveHorizon horizon_from_name(const std::string& s) {
  if (s == "stage1") return PredictiveHorizon::Stage1;
  if (s == "stage2") return PredictiveHorizon::Stage2;
  if (s == "composed") return PredictiveHorizon::Composed;
  throw UsageError("unknown horizon: " + s);
}

struct PredictiveDraw {
  double theta_pred = 0.0;    // after censoring; exact 0 is the censored atom
  double theta_latent = 0.0;  // before censoring
  PredictiveHorizon horizon = PredictiveHorizon::Stage1;
  double initial_condition = 0.0;
};

// One predictive draw per stored posterior draw: push the initial condition
// through the stage link(s), add wrapped Cauchy noise, censor with the
// model's thresholds (per-draw thresholds when they were estimated).
inline std::vector<PredictiveDraw> posterior_predictive(const Chain& chain, Angle initial,
                                                        PredictiveHorizon horizon,
                                                        const ModelSpec& spec, Rng& rng,
                                                        int group = 0) {
  if (chain.size() == 0) throw std::invalid_argument("posterior_predictive: empty chain");
  std::vector<PredictiveDraw> out;
  out.reserve(chain.size());
  const std::complex<double> init = std::polar(1.0, initial.radians());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const StageParams s1 = chain.stage1_at(k);
    const StageParams s2 = chain.stage2_at(k);
    const double dy = spec.estimate_deltas ? chain.delta_y_at(k) : spec.delta_y;
    const double dx = spec.estimate_deltas ? chain.delta_x_at(k) : spec.delta_x;
    PredictiveDraw d;
    d.horizon = horizon;
    d.initial_condition = initial.radians();
    if (horizon == PredictiveHorizon::Stage2) {
      const double mu = std::arg(stage2_mean_raw(s2, init));
      d.theta_latent = wrap_radians(mu + WrappedCauchy(Angle(0.0), s2.rho).sample(rng).radians());
      d.theta_pred = censor(d.theta_latent, dx);
    } else {
      std::complex<double> x = init;
      if (horizon == PredictiveHorizon::Composed) {
        const double mu2 = std::arg(stage2_mean_raw(s2, init));
        const double xs =
            wrap_radians(mu2 + WrappedCauchy(Angle(0.0), s2.rho).sample(rng).radians());
        x = std::polar(1.0, xs);
      }
      const double mu1 = std::arg(stage1_mean_raw(s1, x, group));
      d.theta_latent = wrap_radians(mu1 + WrappedCauchy(Angle(0.0), s1.rho).sample(rng).radians());
      d.theta_pred = censor(d.theta_latent, dy);
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace zicc
