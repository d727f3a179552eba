#include "minkflow/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minkflow/errors.hpp"

namespace minkflow {

namespace {

void require_nonsingular(const CurvatureProfile& profile, double eps_kappa) {
  for (std::size_t i = 0; i < profile.kappa.size(); ++i) {
    if (!(std::abs(profile.kappa[i]) > eps_kappa)) {
      std::ostringstream msg;
      msg << "|kappa| = " << std::abs(profile.kappa[i]) << " <= " << eps_kappa << " at s="
          << profile.grid.at(i) << " (index " << i << ")";
      throw Error(ErrorCode::SingularCurvature, msg.str(), i);
    }
  }
}

void require_length(std::span<const double> a, std::size_t n, const char* name) {
  if (a.size() != n)
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + ": length does not match the profile grid");
}

}  // namespace

std::vector<double> derive_gamma(std::span<const double> alpha, std::span<const double> beta,
                                 const CurvatureProfile& profile, double eps_kappa) {
  const std::size_t n = profile.grid.size();
  require_length(alpha, n, "alpha");
  require_length(beta, n, "beta");
  require_nonsingular(profile, eps_kappa);
  const auto beta_s = fd::d1(beta, profile.grid);
  std::vector<double> gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    gamma[i] = (alpha[i] * profile.tau[i] - beta_s[i]) / profile.kappa[i];
  return gamma;
}

VelocityTriple VelocityTriple::from_fields(const CurvatureProfile& profile,
                                           std::vector<double> alpha, std::vector<double> beta,
                                           double eps_kappa) {
  const std::size_t n = profile.grid.size();
  require_length(alpha, n, "alpha");
  require_length(beta, n, "beta");
  VelocityJet jet;
  jet.alpha_s = fd::d1(alpha, profile.grid);
  jet.beta_s = fd::d1(beta, profile.grid);
  jet.beta_ss = fd::d2(beta, profile.grid);
  jet.alpha = std::move(alpha);
  jet.beta = std::move(beta);
  return from_jet(profile, std::move(jet), eps_kappa);
}

VelocityTriple VelocityTriple::from_jet(const CurvatureProfile& profile, VelocityJet jet,
                                        double eps_kappa) {
  const std::size_t n = profile.grid.size();
  require_length(jet.alpha, n, "alpha");
  require_length(jet.alpha_s, n, "alpha_s");
  require_length(jet.beta, n, "beta");
  require_length(jet.beta_s, n, "beta_s");
  require_length(jet.beta_ss, n, "beta_ss");
  require_nonsingular(profile, eps_kappa);

  const auto kappa_s = fd::d1(profile.kappa, profile.grid);
  const auto tau_s = fd::d1(profile.tau, profile.grid);

  VelocityTriple v(profile.grid, std::move(jet));
  v.gamma_.resize(n);
  v.gamma_s_.resize(n);
  const VelocityJet& j = v.jet_;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = profile.kappa[i];
    const double q = j.alpha[i] * profile.tau[i] - j.beta_s[i];
    const double q_s = j.alpha_s[i] * profile.tau[i] + j.alpha[i] * tau_s[i] - j.beta_ss[i];
    v.gamma_[i] = q / k;
    v.gamma_s_[i] = q_s / k - q * kappa_s[i] / (k * k);
  }
  return v;
}

VelocityTriple type1_velocity(const CurvatureProfile& profile, double eps_kappa) {
  const std::size_t n = profile.grid.size();
  VelocityJet jet;
  jet.alpha.assign(n, 0.0);
  jet.alpha_s.assign(n, 0.0);
  jet.beta = profile.kappa;
  jet.beta_s = fd::d1(profile.kappa, profile.grid);
  jet.beta_ss = fd::d2(profile.kappa, profile.grid);
  return VelocityTriple::from_jet(profile, std::move(jet), eps_kappa);
}

VelocityTriple type2_velocity(const CurvatureProfile& profile, double eps_kappa) {
  VelocityJet jet;
  jet.alpha = profile.tau;
  jet.alpha_s = fd::d1(profile.tau, profile.grid);
  jet.beta = fd::d1(profile.kappa, profile.grid);
  jet.beta_s = fd::d2(profile.kappa, profile.grid);
  jet.beta_ss = fd::d3(profile.kappa, profile.grid);
  return VelocityTriple::from_jet(profile, std::move(jet), eps_kappa);
}

RhsValues evolution_rhs(const CurvatureProfile& profile, const VelocityTriple& vel) {
  if (!(vel.grid() == profile.grid))
    throw Error(ErrorCode::InvalidArgument, "evolution_rhs: velocity grid differs from profile grid");
  const std::size_t n = profile.grid.size();
  RhsValues out{std::vector<double>(n), std::vector<double>(n)};
  const auto alpha_s = vel.alpha_s();
  const auto beta = vel.beta();
  const auto gamma_s = vel.gamma_s();
  for (std::size_t i = 0; i < n; ++i) {
    out.kappa_t[i] = alpha_s[i] - profile.tau[i] * beta[i];
    out.tau_t[i] = gamma_s[i] + profile.kappa[i] * beta[i];
  }
  return out;
}

VelocityPreset type1_preset(double eps_kappa) {
  return {"type1", [eps_kappa](const CurvatureProfile& p, double) {
            return type1_velocity(p, eps_kappa);
          }};
}

VelocityPreset type2_preset(double eps_kappa) {
  return {"type2", [eps_kappa](const CurvatureProfile& p, double) {
            return type2_velocity(p, eps_kappa);
          }};
}

VelocityPreset static_preset(double eps_kappa) {
  return {"static", [eps_kappa](const CurvatureProfile& p, double) {
            const std::size_t n = p.grid.size();
            return VelocityTriple::from_fields(p, std::vector<double>(n, 0.0),
                                               std::vector<double>(n, 0.0), eps_kappa);
          }};
}

namespace {

// Stage profile kappa + h * k_kappa, tau + h * k_tau, with BlowUp screening.
CurvatureProfile stage_profile(const CurvatureProfile& base, double h, const RhsValues* k,
                               double blowup) {
  const std::size_t n = base.grid.size();
  std::vector<double> kappa(base.kappa), tau(base.tau);
  if (k) {
    for (std::size_t i = 0; i < n; ++i) {
      kappa[i] += h * k->kappa_t[i];
      tau[i] += h * k->tau_t[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(kappa[i]) <= blowup) || !(std::abs(tau[i]) <= blowup)) {
      std::ostringstream msg;
      msg << "|kappa| or |tau| exceeds " << blowup << " at s=" << base.grid.at(i);
      throw Error(ErrorCode::BlowUp, msg.str(), i);
    }
  }
  return CurvatureProfile(base.grid, std::move(kappa), std::move(tau));
}

}  // namespace

EvolutionState step(const EvolutionState& state, const VelocityPreset& preset, double dt,
                    const EvolutionOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::InvalidArgument, "step: dt must be positive and finite");
  const CurvatureProfile& p0 = state.profile;
  const double t0 = state.t;

  auto rhs = [&](const CurvatureProfile& p, double t) {
    return evolution_rhs(p, preset.make(p, t));
  };

  const RhsValues k1 = rhs(p0, t0);
  const RhsValues k2 = rhs(stage_profile(p0, 0.5 * dt, &k1, opts.blowup), t0 + 0.5 * dt);
  const RhsValues k3 = rhs(stage_profile(p0, 0.5 * dt, &k2, opts.blowup), t0 + 0.5 * dt);
  const RhsValues k4 = rhs(stage_profile(p0, dt, &k3, opts.blowup), t0 + dt);

  const std::size_t n = p0.grid.size();
  RhsValues incr{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    incr.kappa_t[i] = (k1.kappa_t[i] + 2.0 * k2.kappa_t[i] + 2.0 * k3.kappa_t[i] + k4.kappa_t[i]) / 6.0;
    incr.tau_t[i] = (k1.tau_t[i] + 2.0 * k2.tau_t[i] + 2.0 * k3.tau_t[i] + k4.tau_t[i]) / 6.0;
  }
  return {t0 + dt, stage_profile(p0, dt, &incr, opts.blowup)};
}

double stability_hint(const CurvatureProfile& profile) {
  double m = 1.0;
  for (double k : profile.kappa) m = std::max(m, std::abs(k));
  for (double t : profile.tau) m = std::max(m, std::abs(t));
  const double h = profile.grid.spacing();
  return h * h / (4.0 * m);
}

EvolutionTrajectory evolve(const EvolutionState& initial, const VelocityPreset& preset, double dt,
                           std::size_t steps, const EvolutionOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::InvalidArgument, "evolve: dt must be positive and finite");
  if (opts.stride == 0) throw Error(ErrorCode::InvalidArgument, "evolve: stride must be >= 1");

  EvolutionTrajectory traj;
  traj.meta.preset = preset.name;
  traj.meta.dt = dt;
  traj.meta.stride = opts.stride;
  traj.meta.boundary = initial.profile.grid.boundary();
  const double hint = stability_hint(initial.profile);
  if (dt > hint) {
    std::ostringstream msg;
    msg << "dt=" << dt << " exceeds the heuristic explicit bound " << hint
        << " (ds^2 / (4 max(1, |kappa|, |tau|))); watch for oscillation";
    traj.meta.warnings.push_back(msg.str());
  }

  traj.states.reserve(steps / opts.stride + 1);
  traj.states.push_back(initial);
  EvolutionState cur = initial;
  for (std::size_t k = 1; k <= steps; ++k) {
    try {
      cur = step(cur, preset, dt, opts);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "step " << k << " (t=" << cur.t + dt << "): " << e.detail();
      throw Error(e.code(), msg.str(), k);
    }
    // Recompute t from the step count so recorded levels stay exactly uniform.
    cur.t = initial.t + static_cast<double>(k) * dt;
    if (k % opts.stride == 0) traj.states.push_back(cur);
  }
  return traj;
}

CompatibilityResiduals compatibility_residuals(const EvolutionTrajectory& traj,
                                               const VelocityPreset& preset) {
  const auto& st = traj.states;
  if (st.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "compatibility_residuals: need at least 3 states");
  const double dt = st[1].t - st[0].t;
  for (std::size_t k = 1; k < st.size(); ++k) {
    const double step_dt = st[k].t - st[k - 1].t;
    if (!(std::abs(step_dt - dt) <= 1e-9 * std::abs(dt)))
      throw Error(ErrorCode::InvalidArgument, "compatibility_residuals: non-uniform time levels");
  }
  const SGrid& grid = st[0].profile.grid;
  const std::size_t n = grid.size();
  const std::size_t lo = grid.boundary() == Boundary::Periodic ? 0 : 1;
  const std::size_t hi = grid.boundary() == Boundary::Periodic ? n : n - 1;

  CompatibilityResiduals out;
  out.s_count = n;
  for (std::size_t k = 1; k + 1 < st.size(); ++k) {
    const CurvatureProfile& p = st[k].profile;
    const RhsValues rhs = evolution_rhs(p, preset.make(p, st[k].t));
    out.t.push_back(st[k].t);
    for (std::size_t i = 0; i < n; ++i) {
      double rk = 0.0, rt = 0.0;
      if (i >= lo && i < hi) {
        const double dk = (st[k + 1].profile.kappa[i] - st[k - 1].profile.kappa[i]) / (2.0 * dt);
        const double dtau = (st[k + 1].profile.tau[i] - st[k - 1].profile.tau[i]) / (2.0 * dt);
        rk = std::abs(dk - rhs.kappa_t[i]);
        rt = std::abs(dtau - rhs.tau_t[i]);
      }
      out.kappa.push_back(rk);
      out.tau.push_back(rt);
      out.max_kappa = std::max(out.max_kappa, rk);
      out.max_tau = std::max(out.max_tau, rt);
    }
  }
  return out;
}

}  // namespace minkflow
