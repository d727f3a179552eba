#include "minkflow/solitons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "minkflow/errors.hpp"

namespace minkflow {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::ConstraintViolation, std::string(name) + " must be finite");
}

double sech(double x) noexcept { return 1.0 / std::cosh(x); }

}  // namespace

KinkParams kink_params(double A1, double A2, const KinkOptions& opts) {
  require_finite(A1, "A1");
  require_finite(A2, "A2");
  if (!(std::abs(A1) < 1.0) || A1 == 0.0) {
    std::ostringstream msg;
    msg << "kink needs 0 < |A1| < 1 so that eta^2 + A1^2 = 1 has a real root (A1=" << A1 << ")";
    throw Error(ErrorCode::ConstraintViolation, msg.str());
  }
  if (A2 == 0.0) throw Error(ErrorCode::ConstraintViolation, "kink needs A2 != 0");
  if (opts.eta_sign != 1 && opts.eta_sign != -1)
    throw Error(ErrorCode::InvalidArgument, "eta_sign must be +1 or -1");
  KinkParams p;
  p.A1 = A1;
  p.A2 = A2;
  p.eta = opts.eta_sign * std::sqrt(1.0 - A1 * A1);
  p.upsilon = opts.upsilon_override.value_or(p.eta / A2);
  require_finite(p.upsilon, "upsilon");
  return p;
}

BellParams bell_params(double B1, double B2, const BellOptions& opts) {
  require_finite(B1, "B1");
  require_finite(B2, "B2");
  if (B1 == 0.0) throw Error(ErrorCode::ConstraintViolation, "bell needs B1 != 0");
  if (B2 == 0.0) throw Error(ErrorCode::ConstraintViolation, "bell needs B2 != 0");
  BellParams p;
  p.B1 = B1;
  p.B2 = B2;
  p.eta = B1 / 2.0;
  p.upsilon = opts.upsilon_override.value_or(-B2 / B1);
  require_finite(p.upsilon, "upsilon");
  return p;
}

KappaTau eval_kink(const KinkParams& p, double s, double t) noexcept {
  const double th = std::tanh(wave_variable(p.eta, p.upsilon, s, t));
  return {p.A1 * th, p.A2 * th};
}

KappaTau eval_bell(const BellParams& p, double s, double t) noexcept {
  const double se = sech(wave_variable(p.eta, p.upsilon, s, t));
  return {p.B1 * se, p.B2 * se};
}

AnsatzJet kink_jet(const KinkParams& p, double s, double t) noexcept {
  const double xi = wave_variable(p.eta, p.upsilon, s, t);
  const double th = std::tanh(xi);
  const double s2 = sech(xi) * sech(xi);
  const double e = p.eta;
  AnsatzJet j;
  j.kappa = p.A1 * th;
  j.kappa_s = p.A1 * e * s2;
  j.kappa_ss = -2.0 * p.A1 * e * e * s2 * th;
  j.kappa_sss = p.A1 * e * e * e * (4.0 * s2 * th * th - 2.0 * s2 * s2);
  j.kappa_t = -p.upsilon * j.kappa_s;
  j.tau = p.A2 * th;
  j.tau_s = p.A2 * e * s2;
  j.tau_t = -p.upsilon * j.tau_s;
  return j;
}

AnsatzJet bell_jet(const BellParams& p, double s, double t) noexcept {
  const double xi = wave_variable(p.eta, p.upsilon, s, t);
  const double se = sech(xi);
  const double th = std::tanh(xi);
  // Derivatives of sech with respect to xi.
  const double d1 = -se * th;
  const double d2 = se - 2.0 * se * se * se;
  const double d3 = -se * th * (1.0 - 6.0 * se * se);
  const double e = p.eta;
  AnsatzJet j;
  j.kappa = p.B1 * se;
  j.kappa_s = p.B1 * e * d1;
  j.kappa_ss = p.B1 * e * e * d2;
  j.kappa_sss = p.B1 * e * e * e * d3;
  j.kappa_t = -p.upsilon * j.kappa_s;
  j.tau = p.B2 * se;
  j.tau_s = p.B2 * e * d1;
  j.tau_t = -p.upsilon * j.tau_s;
  return j;
}

PointResidual kink_residual(const KinkParams& p, double s, double t, double eps_kappa) noexcept {
  const AnsatzJet j = kink_jet(p, s, t);
  PointResidual r;
  r.R1 = j.kappa_t + j.tau * j.kappa;
  if (std::abs(j.kappa) > eps_kappa) {
    const double k2 = j.kappa * j.kappa;
    r.R2 = j.tau_t - (j.kappa_s * j.kappa_s - j.kappa * j.kappa_ss) / k2 - k2;
  }
  return r;
}

PointResidual bell_residual(const BellParams& p, double s, double t, double eps_kappa) noexcept {
  const AnsatzJet j = bell_jet(p, s, t);
  PointResidual r;
  r.R1 = j.kappa_t - j.tau_s + j.tau * j.kappa_s;
  if (std::abs(j.kappa) > eps_kappa) {
    const double k = j.kappa;
    const double num = (2.0 * j.tau * j.tau_s - j.kappa_sss) * k -
                       (j.tau * j.tau - j.kappa_ss) * j.kappa_s;
    r.R2 = j.tau_t - num / (k * k) - k * j.kappa_s;
  }
  return r;
}

double kink_r1_closed_form(const KinkParams& p, double xi) noexcept {
  const double th = std::tanh(xi);
  const double s2 = sech(xi) * sech(xi);
  return -p.A1 * p.eta * p.upsilon * s2 + p.A1 * p.A2 * th * th;
}

double bell_r1_closed_form(const BellParams& p, double xi) noexcept {
  const double se = sech(xi);
  const double th = std::tanh(xi);
  return p.eta * (p.B1 * p.upsilon + p.B2) * se * th - p.B1 * p.B2 * p.eta * se * se * th;
}

double kink_r1_sup(const KinkParams& p) noexcept {
  // R1 is affine in tanh^2 xi on [0, 1).
  return std::max(std::abs(p.A1 * p.eta * p.upsilon), std::abs(p.A1 * p.A2));
}

double bell_r1_max_balanced(const BellParams& p) noexcept {
  return std::abs(p.B1 * p.B2 * p.eta) * 2.0 / (3.0 * std::sqrt(3.0));
}

double SolitonWindow::s_at(std::size_t i) const noexcept {
  if (ns < 2) return s_min;
  return s_min + static_cast<double>(i) * (s_max - s_min) / static_cast<double>(ns - 1);
}

double SolitonWindow::t_at(std::size_t j) const noexcept {
  if (nt < 2) return t_min;
  return t_min + static_cast<double>(j) * (t_max - t_min) / static_cast<double>(nt - 1);
}

namespace {

void validate(const SolitonWindow& w) {
  if (w.ns < 2 || w.nt < 1)
    throw Error(ErrorCode::InvalidArgument, "soliton window needs ns >= 2 and nt >= 1");
  if (!std::isfinite(w.s_min) || !std::isfinite(w.s_max) || !(w.s_max > w.s_min))
    throw Error(ErrorCode::InvalidArgument, "soliton window needs finite s_max > s_min");
  if (!std::isfinite(w.t_min) || !std::isfinite(w.t_max) || w.t_max < w.t_min ||
      (w.nt > 1 && !(w.t_max > w.t_min)))
    throw Error(ErrorCode::InvalidArgument, "soliton window needs finite t_max > t_min");
}

template <class Eval>
SolitonGrid eval_grid(const SolitonWindow& w, Eval eval) {
  validate(w);
  SolitonGrid g{w, {}, {}};
  g.kappa.reserve(w.ns * w.nt);
  g.tau.reserve(w.ns * w.nt);
  for (std::size_t j = 0; j < w.nt; ++j) {
    for (std::size_t i = 0; i < w.ns; ++i) {
      const KappaTau v = eval(w.s_at(i), w.t_at(j));
      g.kappa.push_back(v.kappa);
      g.tau.push_back(v.tau);
    }
  }
  return g;
}

template <class Eval>
ResidualGrid residual_grid(const SolitonWindow& w, Eval eval) {
  validate(w);
  ResidualGrid g{w, {}, {}, {}, 0.0, 0.0};
  g.R1.reserve(w.ns * w.nt);
  g.R2.reserve(w.ns * w.nt);
  for (std::size_t j = 0; j < w.nt; ++j) {
    for (std::size_t i = 0; i < w.ns; ++i) {
      const PointResidual r = eval(w.s_at(i), w.t_at(j));
      g.R1.push_back(r.R1);
      g.max_abs_R1 = std::max(g.max_abs_R1, std::abs(r.R1));
      if (r.R2) {
        g.R2.push_back(*r.R2);
        g.max_abs_R2 = std::max(g.max_abs_R2, std::abs(*r.R2));
      } else {
        g.excluded.push_back(g.R2.size());
        g.R2.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
  return g;
}

}  // namespace

SolitonGrid eval_kink_grid(const KinkParams& p, const SolitonWindow& w) {
  return eval_grid(w, [&](double s, double t) { return eval_kink(p, s, t); });
}

SolitonGrid eval_bell_grid(const BellParams& p, const SolitonWindow& w) {
  return eval_grid(w, [&](double s, double t) { return eval_bell(p, s, t); });
}

ResidualGrid residual_type1(const KinkParams& p, const SolitonWindow& w) {
  return residual_grid(w, [&](double s, double t) { return kink_residual(p, s, t); });
}

ResidualGrid residual_type2(const BellParams& p, const SolitonWindow& w) {
  return residual_grid(w, [&](double s, double t) { return bell_residual(p, s, t); });
}

}  // namespace minkflow
