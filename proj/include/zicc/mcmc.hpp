#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "zicc/angle.hpp"
#include "zicc/errors.hpp"
#include "zicc/model.hpp"
#include "zicc/rng.hpp"
#include "zicc/wrapped_cauchy.hpp"

namespace zicc {

struct ProposalWidths {
  double angle = 0.25;  // uniform half-width for theta and gamma walks
  double rho = 0.05;    // uniform half-width, reflected into (0, 1 - 1e-6)
  double r = 0.25;      // special-case uniform half-width, reflected into [-1, 1]
  double delta = 0.02;  // half-width for estimated censoring thresholds
};

struct McmcConfig {
  std::uint64_t total_iterations = 20000;
  std::uint64_t burn_in = 8000;
  std::uint64_t thin = 10;
  std::uint64_t seed = 1;
  ProposalWidths widths;
  bool adapt = true;                // tune uniform widths during burn-in only
  double r_proposal_floor = 0.05;   // floor on the exponential-proposal mean
  bool store_latents = true;

  void validate() const {
    if (thin < 1) throw std::invalid_argument("McmcConfig: thin must be >= 1");
    if (burn_in >= total_iterations)
      throw std::invalid_argument("McmcConfig: burn_in must be below total_iterations");
  }
};

// One MH decision. The proposal-density correction matters only for the
// nonsymmetric exponential r proposal; symmetric walks pass zeros.
inline bool mh_accept(double log_target_current, double log_target_proposed,
                      double log_proposal_forward, double log_proposal_backward, Rng& rng) {
  if (std::isnan(log_target_current) || std::isnan(log_target_proposed) ||
      std::isnan(log_proposal_forward) || std::isnan(log_proposal_backward))
    throw NumericalError("mh_accept: NaN log-density (state corruption)");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (log_target_proposed == kNegInf) return false;
  if (log_target_current == kNegInf) return true;
  const double delta = (log_target_proposed - log_target_current) +
                       (log_proposal_backward - log_proposal_forward);
  if (delta >= 0.0) return true;
  return rng.u01() < std::exp(delta);
}

struct AcceptanceTally {
  std::string name;
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  double rate() const { return proposed ? double(accepted) / double(proposed) : 0.0; }
};

struct McmcState {
  StageParams s1, s2;
  double delta_x = 0.0, delta_y = 0.0;
  LatentState latent;
};

struct Chain {
  std::vector<std::string> param_names;
  std::vector<std::vector<double>> draws;  // draws[k][j] = stored draw k, parameter j
  std::vector<std::size_t> censored_x_idx, censored_y_idx;
  std::vector<std::vector<double>> latent_x, latent_y;  // aligned with censored_*_idx
  std::vector<AcceptanceTally> acceptance;
  std::map<std::string, std::string> meta;
  McmcConfig config;
  ModelSpec spec;

  std::size_t size() const { return draws.size(); }

  bool has_param(const std::string& name) const {
    return std::find(param_names.begin(), param_names.end(), name) != param_names.end();
  }

  std::size_t column(const std::string& name) const {
    auto it = std::find(param_names.begin(), param_names.end(), name);
    if (it == param_names.end())
      throw std::invalid_argument("chain has no parameter named " + name);
    return static_cast<std::size_t>(it - param_names.begin());
  }

  std::vector<double> series(const std::string& name) const {
    const std::size_t j = column(name);
    std::vector<double> out;
    out.reserve(draws.size());
    for (const auto& row : draws) out.push_back(row[j]);
    return out;
  }

  double value(std::size_t k, const std::string& name) const { return draws[k][column(name)]; }

  StageParams stage1_at(std::size_t k) const {
    StageParams p;
    const auto& row = draws[k];
    if (spec.variant == ModelVariant::SpecialCase) {
      p.r = row[column("r1")];
      p.rho = row[column("rho1")];
    } else {
      p.theta0 = row[column("theta01")];
      p.r = row[column("r1")];
      p.theta1 = row[column("theta11")];
      p.rho = row[column("rho1")];
      if (spec.group_effect) p.gamma = row[column("gamma")];
    }
    return p;
  }

  StageParams stage2_at(std::size_t k) const {
    StageParams p;
    const auto& row = draws[k];
    if (spec.variant == ModelVariant::SpecialCase) {
      p.r = row[column("r2")];
      p.rho = row[column("rho2")];
    } else {
      p.theta0 = row[column("theta02")];
      p.r = spec.unit_b1 ? 1.0 : row[column("r2")];
      p.theta1 = row[column("theta12")];
      p.rho = row[column("rho2")];
    }
    return p;
  }

  double delta_y_at(std::size_t k) const {
    return has_param("delta_y") ? draws[k][column("delta_y")] : spec.delta_y;
  }

  double delta_x_at(std::size_t k) const {
    return has_param("delta_x") ? draws[k][column("delta_x")] : spec.delta_x;
  }
};

inline bool param_is_circular(const std::string& name) {
  return name.rfind("theta", 0) == 0 || name == "gamma";
}

// Algorithm: alternate latent draws from their truncated wrapped Cauchy
// full conditionals with sequential single-parameter MH updates.
class Sampler {
 public:
  Sampler(std::vector<Observation> data, ModelSpec spec, McmcConfig cfg)
      : data_(std::move(data)), spec_(spec), cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    x_side_ = (spec_.variant == ModelVariant::ModelI ||
               spec_.variant == ModelVariant::SpecialCase) &&
              (spec_.delta_x > 0.0 || spec_.estimate_deltas);
    y_side_ = spec_.variant != ModelVariant::ModelII &&
              (spec_.delta_y > 0.0 || spec_.estimate_deltas);

    min_nonzero_x_ = min_nonzero_y_ = std::numeric_limits<double>::infinity();
    for (const Observation& o : data_) {
      if (o.theta_x != 0.0) min_nonzero_x_ = std::min(min_nonzero_x_, std::abs(wrap_radians(o.theta_x)));
      if (o.theta_y != 0.0) min_nonzero_y_ = std::min(min_nonzero_y_, std::abs(wrap_radians(o.theta_y)));
    }

    st_.delta_x = x_side_ ? initial_delta(spec_.delta_x, min_nonzero_x_) : 0.0;
    st_.delta_y = y_side_ ? initial_delta(spec_.delta_y, min_nonzero_y_) : 0.0;
    validate_dataset(data_, live_spec());

    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (x_side_ && data_[i].theta_x == 0.0) cx_.push_back(i);
      if (y_side_ && data_[i].theta_y == 0.0) cy_.push_back(i);
    }

    st_.latent = initial_latent_state(data_, live_spec());
    init_params();
    rebuild_unit_vectors();
    build_update_schedule();
    refresh_logliks();
    if (!std::isfinite(ll1_) || !std::isfinite(ll2_))
      throw NumericalError("run_chain: non-finite initial log-density");
  }

  const McmcState& state() const { return st_; }
  McmcState& state_mutable() { return st_; }
  const ModelSpec& spec() const { return spec_; }
  const std::vector<std::size_t>& censored_x() const { return cx_; }
  const std::vector<std::size_t>& censored_y() const { return cy_; }
  double stage1_loglik_current() const { return ll1_; }
  double stage2_loglik_current() const { return ll2_; }

  void sweep() {
    update_latents();
    for (std::size_t k = 0; k < params_.size(); ++k) update_param(k);
  }

  Chain run() {
    Chain chain;
    chain.config = cfg_;
    chain.spec = spec_;
    chain.censored_x_idx = cx_;
    chain.censored_y_idx = cy_;
    for (const Slot& s : params_) chain.param_names.push_back(s.name);
    const std::uint64_t kept = (cfg_.total_iterations - cfg_.burn_in) / cfg_.thin;
    chain.draws.reserve(kept);

    for (std::uint64_t t = 1; t <= cfg_.total_iterations; ++t) {
      sweep();
      if (cfg_.adapt && t <= cfg_.burn_in) {
        if (t % kAdaptWindow == 0) adapt_widths();
      }
      if (t == cfg_.burn_in) reset_tallies();  // report post-adaptation rates
      if (t > cfg_.burn_in && (t - cfg_.burn_in) % cfg_.thin == 0) {
        std::vector<double> row(params_.size());
        for (std::size_t k = 0; k < params_.size(); ++k) row[k] = read_param(k);
        chain.draws.push_back(std::move(row));
        if (cfg_.store_latents) {
          std::vector<double> lx, ly;
          lx.reserve(cx_.size());
          ly.reserve(cy_.size());
          for (std::size_t i : cx_) lx.push_back(st_.latent.theta_x_star[i]);
          for (std::size_t i : cy_) ly.push_back(st_.latent.theta_y_star[i]);
          chain.latent_x.push_back(std::move(lx));
          chain.latent_y.push_back(std::move(ly));
        }
      }
    }

    for (std::size_t k = 0; k < params_.size(); ++k)
      chain.acceptance.push_back({params_[k].name, params_[k].proposed, params_[k].accepted});
    chain.meta["variant"] = variant_name(spec_.variant);
    chain.meta["delta_x"] = format_double(spec_.estimate_deltas ? -1.0 : st_.delta_x);
    chain.meta["delta_y"] = format_double(spec_.estimate_deltas ? -1.0 : st_.delta_y);
    chain.meta["a_rho"] = format_double(spec_.a_rho);
    chain.meta["unit_b1"] = spec_.unit_b1 ? "1" : "0";
    chain.meta["group_effect"] = spec_.group_effect ? "1" : "0";
    chain.meta["estimate_deltas"] = spec_.estimate_deltas ? "1" : "0";
    chain.meta["exact_latent_x"] = spec_.exact_latent_x ? "1" : "0";
    chain.meta["seed"] = std::to_string(cfg_.seed);
    chain.meta["iterations"] = std::to_string(cfg_.total_iterations);
    chain.meta["burn_in"] = std::to_string(cfg_.burn_in);
    chain.meta["thin"] = std::to_string(cfg_.thin);
    chain.meta["n_obs"] = std::to_string(data_.size());
    return chain;
  }

  std::vector<AcceptanceTally> acceptance() const {
    std::vector<AcceptanceTally> out;
    for (const Slot& s : params_) out.push_back({s.name, s.proposed, s.accepted});
    return out;
  }

  static std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

 private:
  enum class Kind { Angle, Rho, RExp, RUniform, Gamma, DeltaY, DeltaX };

  struct Slot {
    std::string name;
    Kind kind;
    int stage;  // 1 or 2; 0 for deltas
    double width;
    std::uint64_t proposed = 0, accepted = 0;
    std::uint64_t win_proposed = 0, win_accepted = 0;
  };

  static constexpr std::uint64_t kAdaptWindow = 200;
  static constexpr double kRhoCap = 1.0 - 1e-6;

  ModelSpec live_spec() const {
    ModelSpec s = spec_;
    s.delta_x = st_.delta_x;
    s.delta_y = st_.delta_y;
    return s;
  }

  static double initial_delta(double configured, double min_nonzero) {
    if (configured > 0.0 && configured <= min_nonzero) return configured;
    const double cap = std::isfinite(min_nonzero) ? min_nonzero : 1.0;
    return 0.5 * std::min(cap, 1.0);
  }

  void init_params() {
    const auto safe_mean = [](const std::vector<double>& v) {
      if (v.empty()) return 0.0;
      CircularSummary s = circular_mean_and_dispersion(std::span<const double>(v));
      return s.mean_defined ? s.circular_mean.radians() : 0.0;
    };
    std::vector<double> ys, xs, vs;
    for (const Observation& o : data_) {
      ys.push_back(wrap_radians(o.theta_y));
      xs.push_back(wrap_radians(o.theta_x));
      vs.push_back(wrap_radians(o.theta_v));
    }
    st_.s1 = StageParams{};
    st_.s2 = StageParams{};
    if (spec_.variant != ModelVariant::SpecialCase) {
      st_.s1.theta0 = wrap_radians(safe_mean(ys) - safe_mean(xs));
      st_.s2.theta0 = wrap_radians(safe_mean(xs) - safe_mean(vs));
    }
    if (spec_.unit_b1) {
      st_.s2.r = 1.0;
      st_.s2.theta0 = 0.0;  // only theta02 + theta12 is identified; start at the data rotation
      st_.s2.theta1 = wrap_radians(safe_mean(xs) - safe_mean(vs));
    }
  }

  void rebuild_unit_vectors() {
    vv_.resize(data_.size());
    vx_.resize(data_.size());
    vy_.resize(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
      vv_[i] = std::polar(1.0, data_[i].theta_v);
      vx_[i] = std::polar(1.0, st_.latent.theta_x_star[i]);
      vy_[i] = std::polar(1.0, st_.latent.theta_y_star[i]);
    }
  }

  void build_update_schedule() {
    const bool special = spec_.variant == ModelVariant::SpecialCase;
    const ProposalWidths& w = cfg_.widths;
    if (special) {
      params_.push_back({"r1", Kind::RUniform, 1, w.r});
      params_.push_back({"rho1", Kind::Rho, 1, w.rho});
      params_.push_back({"r2", Kind::RUniform, 2, w.r});
      params_.push_back({"rho2", Kind::Rho, 2, w.rho});
    } else {
      params_.push_back({"theta01", Kind::Angle, 1, w.angle});
      params_.push_back({"r1", Kind::RExp, 1, 0.0});
      params_.push_back({"theta11", Kind::Angle, 1, w.angle});
      params_.push_back({"rho1", Kind::Rho, 1, w.rho});
      if (spec_.group_effect) params_.push_back({"gamma", Kind::Gamma, 1, w.angle});
      params_.push_back({"theta02", Kind::Angle, 2, w.angle});
      if (!spec_.unit_b1) params_.push_back({"r2", Kind::RExp, 2, 0.0});
      params_.push_back({"theta12", Kind::Angle, 2, w.angle});
      params_.push_back({"rho2", Kind::Rho, 2, w.rho});
    }
    if (spec_.estimate_deltas) {
      if (y_side_) params_.push_back({"delta_y", Kind::DeltaY, 0, w.delta});
      if (x_side_) params_.push_back({"delta_x", Kind::DeltaX, 0, w.delta});
    }
  }

  double read_param(std::size_t k) const {
    const Slot& s = params_[k];
    switch (s.kind) {
      case Kind::Angle:
        if (s.name == "theta01") return st_.s1.theta0;
        if (s.name == "theta11") return st_.s1.theta1;
        if (s.name == "theta02") return st_.s2.theta0;
        return st_.s2.theta1;
      case Kind::Gamma: return st_.s1.gamma;
      case Kind::Rho: return s.stage == 1 ? st_.s1.rho : st_.s2.rho;
      case Kind::RExp:
      case Kind::RUniform: return s.stage == 1 ? st_.s1.r : st_.s2.r;
      case Kind::DeltaY: return st_.delta_y;
      case Kind::DeltaX: return st_.delta_x;
    }
    return 0.0;
  }

  // Stage log-likelihoods over the cached unit vectors. Outside the
  // constant-regime band |1 + conj(b1) x| > 1e-6, so no denominator check
  // is needed in the loop.
  double stage_loglik(const StageParams& p, int stage) const {
    const std::complex<double> b1 = p.beta1();
    const double rho = p.rho;
    const double lead = std::log1p(-rho * rho) - std::log(kTwoPi);
    const double one_p_rho2 = 1.0 + rho * rho;
    double total = 0.0;
    const auto& resp = (stage == 1) ? vy_ : vx_;
    const auto& cov = (stage == 1) ? vx_ : vv_;
    if (beta1_constant_regime(b1)) {
      std::complex<double> m0 = std::polar(1.0, p.theta0) * b1;
      m0 /= std::abs(m0);
      std::complex<double> m1 = m0;
      if (stage == 1 && spec_.group_effect) {
        m1 = std::polar(1.0, p.theta0 + p.gamma) * b1;
        m1 /= std::abs(m1);
      }
      for (std::size_t i = 0; i < data_.size(); ++i) {
        const std::complex<double>& mu =
            (stage == 1 && spec_.group_effect && data_[i].group) ? m1 : m0;
        const double c = resp[i].real() * mu.real() + resp[i].imag() * mu.imag();
        total += lead - std::log(one_p_rho2 - 2.0 * rho * c);
      }
      return total;
    }
    const std::complex<double> cb1 = std::conj(b1);
    const std::complex<double> rot0 = std::polar(1.0, p.theta0);
    const std::complex<double> rot1 =
        (stage == 1 && spec_.group_effect) ? std::polar(1.0, p.theta0 + p.gamma) : rot0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      const std::complex<double>& x = cov[i];
      std::complex<double> mu = ((stage == 1 && data_[i].group) ? rot1 : rot0) * (x + b1) /
                                (1.0 + cb1 * x);
      mu /= std::abs(mu);
      const double c = resp[i].real() * mu.real() + resp[i].imag() * mu.imag();
      total += lead - std::log(one_p_rho2 - 2.0 * rho * c);
    }
    return total;
  }

  void refresh_logliks() {
    ll1_ = stage_loglik(st_.s1, 1);
    ll2_ = stage_loglik(st_.s2, 2);
  }

  double rho_log_prior(double rho) const {
    if (!(rho > 0.0 && rho < 1.0)) return -std::numeric_limits<double>::infinity();
    return (spec_.a_rho - 1.0) * (std::log(rho) + std::log1p(-rho));
  }

  static double reflect_into(double x, double lo, double hi) {
    const double span = hi - lo;
    double t = std::fmod(x - lo, 2.0 * span);
    if (t < 0.0) t += 2.0 * span;
    return t <= span ? lo + t : hi - (t - span);
  }

  void update_latents() {
    for (std::size_t i : cx_) {
      const Angle mu2 = Angle(std::arg(stage2_mean_raw(st_.s2, vv_[i])));
      TruncatedWrappedCauchy twc(WrappedCauchy(mu2, st_.s2.rho), Angle(-st_.delta_x),
                                 Angle(st_.delta_x), Angle(0.0));
      const double proposal = twc.sample(rng_).radians();
      bool take = true;
      if (spec_.exact_latent_x) {
        // tw-style draw as an independence proposal against the exact joint
        // conditional, which also carries the stage-1 factor through mu_1i
        const int w = spec_.group_effect ? data_[i].group : 0;
        const std::complex<double> mu_new =
            stage1_mean_raw(st_.s1, std::polar(1.0, proposal), w);
        const std::complex<double> mu_old = stage1_mean_raw(st_.s1, vx_[i], w);
        const double c_new = vy_[i].real() * mu_new.real() + vy_[i].imag() * mu_new.imag();
        const double c_old = vy_[i].real() * mu_old.real() + vy_[i].imag() * mu_old.imag();
        const double delta = wc_log_density_from_cos(st_.s1.rho, c_new) -
                             wc_log_density_from_cos(st_.s1.rho, c_old);
        take = delta >= 0.0 || rng_.u01() < std::exp(delta);
      }
      if (take) {
        st_.latent.theta_x_star[i] = proposal;
        vx_[i] = std::polar(1.0, proposal);
      }
    }
    for (std::size_t i : cy_) {
      const int w = spec_.group_effect ? data_[i].group : 0;
      const Angle mu1 = Angle(std::arg(stage1_mean_raw(st_.s1, vx_[i], w)));
      TruncatedWrappedCauchy twc(WrappedCauchy(mu1, st_.s1.rho), Angle(-st_.delta_y),
                                 Angle(st_.delta_y), Angle(0.0));
      const double draw = twc.sample(rng_).radians();
      st_.latent.theta_y_star[i] = draw;
      vy_[i] = std::polar(1.0, draw);
    }
    refresh_logliks();
  }

  void update_param(std::size_t k) {
    Slot& s = params_[k];
    ++s.proposed;
    ++s.win_proposed;
    switch (s.kind) {
      case Kind::Angle:
      case Kind::Gamma: update_angle_like(s); break;
      case Kind::Rho: update_rho(s); break;
      case Kind::RExp: update_r_exponential(s); break;
      case Kind::RUniform: update_r_uniform(s); break;
      case Kind::DeltaY: update_delta(s, true); break;
      case Kind::DeltaX: update_delta(s, false); break;
    }
  }

  double& angle_field(const Slot& s) {
    if (s.kind == Kind::Gamma) return st_.s1.gamma;
    if (s.name == "theta01") return st_.s1.theta0;
    if (s.name == "theta11") return st_.s1.theta1;
    if (s.name == "theta02") return st_.s2.theta0;
    return st_.s2.theta1;
  }

  void update_angle_like(Slot& s) {
    StageParams& cur = s.stage == 1 ? st_.s1 : st_.s2;
    double& ll = s.stage == 1 ? ll1_ : ll2_;
    StageParams cand = cur;
    double& field = s.kind == Kind::Gamma
                        ? cand.gamma
                        : (s.name == "theta01" || s.name == "theta02" ? cand.theta0 : cand.theta1);
    field = wrap_radians(field + rng_.uniform(-s.width, s.width));
    const double ll_new = stage_loglik(cand, s.stage);
    if (mh_accept(ll, ll_new, 0.0, 0.0, rng_)) {
      cur = cand;
      ll = ll_new;
      ++s.accepted;
      ++s.win_accepted;
    }
  }

  void update_rho(Slot& s) {
    StageParams& cur = s.stage == 1 ? st_.s1 : st_.s2;
    double& ll = s.stage == 1 ? ll1_ : ll2_;
    StageParams cand = cur;
    cand.rho = reflect_into(cand.rho + rng_.uniform(-s.width, s.width), 0.0, kRhoCap);
    const double ll_new = stage_loglik(cand, s.stage);
    const double lt_cur = ll + rho_log_prior(cur.rho);
    const double lt_new = ll_new + rho_log_prior(cand.rho);
    if (mh_accept(lt_cur, lt_new, 0.0, 0.0, rng_)) {
      cur = cand;
      ll = ll_new;
      ++s.accepted;
      ++s.win_accepted;
    }
  }

  void update_r_exponential(Slot& s) {
    StageParams& cur = s.stage == 1 ? st_.s1 : st_.s2;
    double& ll = s.stage == 1 ? ll1_ : ll2_;
    const double rate_fwd = 1.0 / std::max(cur.r, cfg_.r_proposal_floor);
    StageParams cand = cur;
    cand.r = rng_.exponential(rate_fwd);
    const double rate_bwd = 1.0 / std::max(cand.r, cfg_.r_proposal_floor);
    const double lq_fwd = std::log(rate_fwd) - rate_fwd * cand.r;
    const double lq_bwd = std::log(rate_bwd) - rate_bwd * cur.r;
    const double ll_new = stage_loglik(cand, s.stage);
    const double lt_cur = ll - cur.r * cur.r;
    const double lt_new = ll_new - cand.r * cand.r;
    if (mh_accept(lt_cur, lt_new, lq_fwd, lq_bwd, rng_)) {
      cur = cand;
      ll = ll_new;
      ++s.accepted;
      ++s.win_accepted;
    }
  }

  void update_r_uniform(Slot& s) {
    StageParams& cur = s.stage == 1 ? st_.s1 : st_.s2;
    double& ll = s.stage == 1 ? ll1_ : ll2_;
    StageParams cand = cur;
    if (s.width > 0.0)
      cand.r = reflect_into(cand.r + rng_.uniform(-s.width, s.width), -1.0, 1.0);
    const double ll_new = stage_loglik(cand, s.stage);
    if (mh_accept(ll, ll_new, 0.0, 0.0, rng_)) {
      cur = cand;
      ll = ll_new;
      ++s.accepted;
      ++s.win_accepted;
    }
  }

  // Flat target on the corridor forced by the data: every censored latent
  // strictly inside (-delta, delta), every nonzero observation outside.
  void update_delta(Slot& s, bool y_side) {
    double& cur = y_side ? st_.delta_y : st_.delta_x;
    const double cand = cur + rng_.uniform(-s.width, s.width);
    const double min_nonzero = y_side ? min_nonzero_y_ : min_nonzero_x_;
    bool ok = cand >= 0.0 && cand < kPi && cand <= min_nonzero;
    if (ok) {
      const auto& idx = y_side ? cy_ : cx_;
      const auto& lat = y_side ? st_.latent.theta_y_star : st_.latent.theta_x_star;
      for (std::size_t i : idx) {
        if (!(std::abs(lat[i]) < cand)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      cur = cand;
      ++s.accepted;
      ++s.win_accepted;
    }
  }

  void adapt_widths() {
    for (Slot& s : params_) {
      if (s.kind == Kind::RExp || s.win_proposed == 0) continue;
      const double rate = double(s.win_accepted) / double(s.win_proposed);
      if (rate < 0.2) s.width *= 0.8;
      else if (rate > 0.5) s.width *= 1.25;
      switch (s.kind) {
        case Kind::Angle:
        case Kind::Gamma: s.width = std::clamp(s.width, 1e-4, kPi); break;
        case Kind::Rho: s.width = std::clamp(s.width, 1e-5, 0.49); break;
        case Kind::RUniform: s.width = std::clamp(s.width, 1e-4, 1.0); break;
        case Kind::DeltaY:
        case Kind::DeltaX: s.width = std::clamp(s.width, 1e-6, 0.5); break;
        case Kind::RExp: break;
      }
      s.win_proposed = s.win_accepted = 0;
    }
  }

  void reset_tallies() {
    for (Slot& s : params_) {
      s.proposed = s.accepted = 0;
      s.win_proposed = s.win_accepted = 0;
    }
  }

  std::vector<Observation> data_;
  ModelSpec spec_;
  McmcConfig cfg_;
  Rng rng_;
  McmcState st_;
  bool x_side_ = false, y_side_ = false;
  std::vector<std::size_t> cx_, cy_;
  double min_nonzero_x_ = 0.0, min_nonzero_y_ = 0.0;
  std::vector<std::complex<double>> vv_, vx_, vy_;
  double ll1_ = 0.0, ll2_ = 0.0;
  std::vector<Slot> params_;
};

// Deterministic given the seed: burn-in discarded, thinning applied,
// post-adaptation acceptance rates reported.
inline Chain run_chain(const std::vector<Observation>& data, const ModelSpec& spec,
                       const McmcConfig& cfg) {
  Sampler sampler(data, spec, cfg);
  return sampler.run();
}

}  // namespace zicc
