#include "minkflow/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minkflow/errors.hpp"

namespace minkflow {

double frame_defect(const FrenetFrame& f) noexcept {
  const double d[] = {
      std::abs(minkowski_dot(f.T, f.T) - 1.0), std::abs(minkowski_dot(f.N, f.N) + 1.0),
      std::abs(minkowski_dot(f.B, f.B) - 1.0), std::abs(minkowski_dot(f.T, f.N)),
      std::abs(minkowski_dot(f.T, f.B)),       std::abs(minkowski_dot(f.N, f.B)),
  };
  double m = 0.0;
  for (double v : d) m = std::isnan(v) ? v : std::max(m, v);
  return m;
}

FrameRate frame_rate_s(const FrenetFrame& f, double kappa, double tau) noexcept {
  return {kappa * f.N, kappa * f.T + tau * f.B, tau * f.N};
}

FrameRate frame_rate_t(const FrenetFrame& f, double alpha, double beta, double gamma) noexcept {
  return {alpha * f.N - beta * f.B, alpha * f.T + gamma * f.B, beta * f.T + gamma * f.N};
}

FrenetFrame reorthonormalize(const FrenetFrame& f) {
  FrenetFrame out;
  out.T = normalize(f.T);
  // <N,T> T is the T-component since <T,T> = +1.
  out.N = normalize(f.N - minkowski_dot(f.N, out.T) * out.T);
  // N has <N,N> = -1, so its projection coefficient flips sign.
  out.B = normalize(f.B - minkowski_dot(f.B, out.T) * out.T + minkowski_dot(f.B, out.N) * out.N);
  return out;
}

namespace {

// kappa/tau at the midpoint between samples i and i+1, by the cubic through
// four neighbouring samples.
double midpoint_value(const std::vector<double>& f, std::size_t i, Boundary boundary) {
  const std::size_t n = f.size();
  if (boundary == Boundary::Periodic) {
    auto at = [&](std::ptrdiff_t j) {
      const auto sn = static_cast<std::ptrdiff_t>(n);
      return f[static_cast<std::size_t>(((j % sn) + sn) % sn)];
    };
    const auto si = static_cast<std::ptrdiff_t>(i);
    return (-at(si - 1) + 9.0 * at(si) + 9.0 * at(si + 1) - at(si + 2)) / 16.0;
  }
  if (i == 0) return (5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) / 16.0;
  if (i == n - 2) return (f[n - 4] - 5.0 * f[n - 3] + 15.0 * f[n - 2] + 5.0 * f[n - 1]) / 16.0;
  return (-f[i - 1] + 9.0 * f[i] + 9.0 * f[i + 1] - f[i + 2]) / 16.0;
}

struct CurveState {
  Vec3M r;
  FrenetFrame frame;
};

CurveState derivative(const CurveState& x, double kappa, double tau) {
  const FrameRate rate = frame_rate_s(x.frame, kappa, tau);
  return {x.frame.T, {rate.dT, rate.dN, rate.dB}};
}

CurveState axpy(const CurveState& x, double h, const CurveState& k) {
  return {x.r + h * k.r, {x.frame.T + h * k.frame.T, x.frame.N + h * k.frame.N,
                          x.frame.B + h * k.frame.B}};
}

ReconstructedCurve integrate(const CurvatureProfile& profile, const FrenetFrame& initial,
                             const Vec3M& origin, const FrameIntegrationOptions& opts) {
  if (frame_defect(initial) > kFrameTol)
    throw Error(ErrorCode::InvalidArgument, "initial frame is not Minkowski-orthonormal");
  if (!origin.is_finite()) throw Error(ErrorCode::InvalidArgument, "origin must be finite");

  const SGrid& grid = profile.grid;
  const std::size_t n = grid.size();
  const double h = grid.spacing();

  ReconstructedCurve curve{grid, {}, {}};
  curve.points.reserve(n);
  curve.frames.reserve(n);
  CurveState x{origin, initial};
  curve.points.push_back(x.r);
  curve.frames.push_back(x.frame);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double k0 = profile.kappa[i], t0 = profile.tau[i];
    const double km = midpoint_value(profile.kappa, i, grid.boundary());
    const double tm = midpoint_value(profile.tau, i, grid.boundary());
    const double k1 = profile.kappa[i + 1], t1 = profile.tau[i + 1];

    const CurveState s1 = derivative(x, k0, t0);
    const CurveState s2 = derivative(axpy(x, 0.5 * h, s1), km, tm);
    const CurveState s3 = derivative(axpy(x, 0.5 * h, s2), km, tm);
    const CurveState s4 = derivative(axpy(x, h, s3), k1, t1);

    const double w = h / 6.0;
    x = axpy(x, w, s1);
    x = axpy(x, 2.0 * w, s2);
    x = axpy(x, 2.0 * w, s3);
    x = axpy(x, w, s4);

    if (opts.reorthonormalize) x.frame = reorthonormalize(x.frame);
    if (opts.drift_limit) {
      const double defect = frame_defect(x.frame);
      if (!(defect <= *opts.drift_limit)) {
        std::ostringstream msg;
        msg << "frame defect " << defect << " exceeds " << *opts.drift_limit << " at s="
            << grid.at(i + 1) << "; refine the grid";
        throw Error(ErrorCode::FrameDrift, msg.str(), i + 1);
      }
    }
    curve.points.push_back(x.r);
    curve.frames.push_back(x.frame);
  }
  return curve;
}

}  // namespace

std::vector<FrenetFrame> integrate_frame_s(const CurvatureProfile& profile,
                                           const FrenetFrame& initial,
                                           const FrameIntegrationOptions& opts) {
  return integrate(profile, initial, Vec3M{}, opts).frames;
}

ReconstructedCurve reconstruct_curve(const CurvatureProfile& profile, const FrenetFrame& initial,
                                     const Vec3M& origin, const FrameIntegrationOptions& opts) {
  return integrate(profile, initial, origin, opts);
}

CurvatureProfile curvature_from_curve(const ReconstructedCurve& curve) {
  const std::size_t n = curve.grid.size();
  if (curve.frames.size() != n)
    throw Error(ErrorCode::DegenerateFrame, "curve has no stored frame for every point");
  if (curve.points.size() != n)
    throw Error(ErrorCode::InvalidArgument, "curve point count does not match its grid");

  // The reconstructed curve is open even when the profile was periodic.
  const SGrid open(curve.grid.s_min(),
                   curve.grid.s_min() + static_cast<double>(n - 1) * curve.grid.spacing(), n,
                   Boundary::OneSided);

  std::vector<double> comp(n);
  auto derive = [&](auto get, auto stencil) {
    std::vector<Vec3M> out(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = get(i).x1;
    auto d = stencil(comp, open);
    for (std::size_t i = 0; i < n; ++i) out[i].x1 = d[i];
    for (std::size_t i = 0; i < n; ++i) comp[i] = get(i).x2;
    d = stencil(comp, open);
    for (std::size_t i = 0; i < n; ++i) out[i].x2 = d[i];
    for (std::size_t i = 0; i < n; ++i) comp[i] = get(i).x3;
    d = stencil(comp, open);
    for (std::size_t i = 0; i < n; ++i) out[i].x3 = d[i];
    return out;
  };
  auto d1 = [](std::span<const double> f, const SGrid& g) { return fd::d1(f, g); };
  auto d2 = [](std::span<const double> f, const SGrid& g) { return fd::d2(f, g); };

  const auto r_ss = derive([&](std::size_t i) { return curve.points[i]; }, d2);
  const auto b_s = derive([&](std::size_t i) { return curve.frames[i].B; }, d1);

  std::vector<double> kappa(n), tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3M& N = curve.frames[i].N;
    kappa[i] = -minkowski_dot(r_ss[i], N);
    tau[i] = -minkowski_dot(b_s[i], N);
  }
  return CurvatureProfile(curve.grid, std::move(kappa), std::move(tau));
}

FrameDriftReport measure_drift(const std::vector<FrenetFrame>& frames) noexcept {
  FrameDriftReport r;
  for (const auto& f : frames) {
    r.tt = std::max(r.tt, std::abs(minkowski_dot(f.T, f.T) - 1.0));
    r.nn = std::max(r.nn, std::abs(minkowski_dot(f.N, f.N) + 1.0));
    r.bb = std::max(r.bb, std::abs(minkowski_dot(f.B, f.B) - 1.0));
    r.tn = std::max(r.tn, std::abs(minkowski_dot(f.T, f.N)));
    r.tb = std::max(r.tb, std::abs(minkowski_dot(f.T, f.B)));
    r.nb = std::max(r.nb, std::abs(minkowski_dot(f.N, f.B)));
  }
  r.max_defect = std::max({r.tt, r.nn, r.bb, r.tn, r.tb, r.nb});
  return r;
}

}  // namespace minkflow
