#include "minkflow/surfaces.hpp"

#include <cmath>
#include <sstream>

#include "minkflow/errors.hpp"

namespace minkflow {

CurvaturePair curvatures_from_forms(const FundamentalForms& ff) {
  if (ff.W == 0.0) throw Error(ErrorCode::InvalidArgument, "curvatures: W = EG - F^2 vanishes");
  return {ff.eps * (ff.e * ff.g - ff.f * ff.f) / ff.W,
          ff.eps * (ff.E * ff.g - 2.0 * ff.F * ff.f + ff.G * ff.e) / (2.0 * ff.W)};
}

namespace {

double normal_E(const CurveJet& c, double u) {
  const double a = 1.0 + u * c.kappa;
  const double E = c.tau * c.tau * u * u + a * a;
  if (!(E > kRulingTol)) {
    std::ostringstream msg;
    msg << "normal surface ruling is degenerate at u=" << u << " (E=" << E << ")";
    throw Error(ErrorCode::DegenerateRuling, msg.str());
  }
  return E;
}

double binormal_D(const CurveJet& c, double v) {
  const double D = v * v * c.tau * c.tau - 1.0;
  if (std::abs(D) <= kRulingTol) {
    std::ostringstream msg;
    msg << "binormal surface normal is null at v=" << v << " (v^2 tau^2 = 1)";
    throw Error(ErrorCode::NullNormal, msg.str());
  }
  if (D < 0.0) {
    std::ostringstream msg;
    msg << "binormal surface formulas need v^2 tau^2 > 1 (got " << D + 1.0 << ")";
    throw Error(ErrorCode::NotTimelike, msg.str());
  }
  return D;
}

}  // namespace

FundamentalForms paper_forms_normal(const CurveJet& c, double u) {
  const double E = normal_E(c, u);
  const double root = std::sqrt(E);
  FundamentalForms ff;
  ff.E = E;
  ff.F = 0.0;
  ff.G = -1.0;
  ff.e = (c.tau * u * u * c.kappa_s + c.tau_s * u * (1.0 + u * c.kappa)) / root;
  ff.f = (2.0 * c.tau * u * c.kappa + c.tau) / root;
  ff.g = 0.0;
  ff.W = -E;
  ff.eps = 1.0;
  return ff;
}

CurvaturePair paper_curvatures_normal(const CurveJet& c, double u) {
  const double E = normal_E(c, u);
  const double m = 2.0 * c.tau * u * c.kappa + c.tau;
  return {m * m / (E * E),
          (c.tau * u * u * c.kappa_s + c.tau_s * u * (1.0 + u * c.kappa)) /
              (2.0 * std::pow(E, 1.5))};
}

FundamentalForms paper_forms_binormal(const CurveJet& c, double v) {
  const double D = binormal_D(c, v);
  const double root = std::sqrt(D);
  FundamentalForms ff;
  ff.E = 1.0 - v * v * c.tau * c.tau;
  ff.F = 0.0;
  ff.G = 1.0;
  ff.e = -(c.tau * c.tau * v * v * c.kappa + (c.kappa + v * c.tau_s)) / root;
  ff.f = -c.tau / root;
  ff.g = 0.0;
  ff.W = ff.E * ff.G - ff.F * ff.F;
  ff.eps = 1.0;
  return ff;
}

CurvaturePair paper_curvatures_binormal(const CurveJet& c, double v) {
  const double D = binormal_D(c, v);
  return {c.tau * c.tau / (D * D),
          (c.tau * c.tau * v * v * c.kappa + (c.kappa + v * c.tau_s)) / (2.0 * std::pow(D, 1.5))};
}

Vec3M surface_point_normal(const Vec3M& r, const FrenetFrame& frame, double u) noexcept {
  return r + u * frame.N;
}

Vec3M surface_point_binormal(const Vec3M& r, const FrenetFrame& frame, double v) noexcept {
  return r + v * frame.B;
}

PatchDerivatives patch_derivatives(const SurfacePatch& p, int spacing) {
  if (spacing != 1 && spacing != 2)
    throw Error(ErrorCode::InvalidArgument, "patch_derivatives: spacing must be 1 or 2");
  if (!(p.ds > 0.0) || !(p.du > 0.0))
    throw Error(ErrorCode::InvalidArgument, "patch_derivatives: ds and du must be positive");
  const std::size_t c = 2;
  const auto k = static_cast<std::size_t>(spacing);
  const double hs = p.ds * spacing;
  const double hu = p.du * spacing;
  const auto& x = p.x;
  PatchDerivatives d;
  d.x_s = (x[c + k][c] - x[c - k][c]) / (2.0 * hs);
  d.x_u = (x[c][c + k] - x[c][c - k]) / (2.0 * hu);
  d.x_ss = (x[c + k][c] - 2.0 * x[c][c] + x[c - k][c]) / (hs * hs);
  d.x_uu = (x[c][c + k] - 2.0 * x[c][c] + x[c][c - k]) / (hu * hu);
  d.x_su = (x[c + k][c + k] - x[c + k][c - k] - x[c - k][c + k] + x[c - k][c - k]) /
           (4.0 * hs * hu);
  return d;
}

namespace {

FundamentalForms forms_from(const PatchDerivatives& d, NormalOrientation orientation) {
  // Squared-norm tolerance kRulingTol on the normal.
  Vec3M U = normalize(lorentz_cross(d.x_s, d.x_u), std::sqrt(kRulingTol));
  if (orientation == NormalOrientation::Flipped) U = -U;
  FundamentalForms ff;
  ff.E = minkowski_dot(d.x_s, d.x_s);
  ff.F = minkowski_dot(d.x_s, d.x_u);
  ff.G = minkowski_dot(d.x_u, d.x_u);
  ff.e = minkowski_dot(d.x_ss, U);
  ff.f = minkowski_dot(d.x_su, U);
  ff.g = minkowski_dot(d.x_uu, U);
  ff.W = ff.E * ff.G - ff.F * ff.F;
  ff.eps = minkowski_dot(U, U) > 0.0 ? 1.0 : -1.0;
  return ff;
}

}  // namespace

FundamentalForms numeric_forms(const SurfacePatch& patch, NormalOrientation orientation) {
  return forms_from(patch_derivatives(patch, 1), orientation);
}

double numeric_gauss_error_estimate(const SurfacePatch& patch) {
  const double fine = curvatures_from_forms(forms_from(patch_derivatives(patch, 1),
                                                       NormalOrientation::Standard)).K;
  const double coarse = curvatures_from_forms(forms_from(patch_derivatives(patch, 2),
                                                         NormalOrientation::Standard)).K;
  return std::abs(fine - coarse) / 3.0;
}

namespace {

template <class Point>
SurfacePatch make_patch(const ReconstructedCurve& curve, std::size_t i, double w0, double dw,
                        Point point) {
  const std::size_t n = curve.points.size();
  if (curve.frames.size() != n || n < 5)
    throw Error(ErrorCode::DegenerateFrame, "surface patch needs a curve with frames");
  if (i < 2 || i + 2 >= n)
    throw Error(ErrorCode::InvalidArgument, "surface patch centre must satisfy 2 <= i <= n-3", i);
  if (!(dw > 0.0)) throw Error(ErrorCode::InvalidArgument, "ruling spacing must be positive");
  SurfacePatch p;
  p.ds = curve.grid.spacing();
  p.du = dw;
  for (std::size_t a = 0; a < 5; ++a) {
    const std::size_t idx = i + a - 2;
    for (std::size_t b = 0; b < 5; ++b) {
      const double w = w0 + (static_cast<double>(b) - 2.0) * dw;
      p.x[a][b] = point(curve.points[idx], curve.frames[idx], w);
    }
  }
  return p;
}

}  // namespace

SurfacePatch normal_patch(const ReconstructedCurve& curve, std::size_t i, double u, double du) {
  return make_patch(curve, i, u, du, surface_point_normal);
}

SurfacePatch binormal_patch(const ReconstructedCurve& curve, std::size_t i, double v, double dv) {
  return make_patch(curve, i, v, dv, surface_point_binormal);
}

double inext_residual_normal(double kappa, double tau, double kappa_t, double tau_t,
                             double u) noexcept {
  return tau * tau_t * u + (1.0 + u * kappa) * kappa_t;
}

double inext_residual_binormal(double tau, double tau_t, double v) noexcept {
  return v * v * tau * tau_t;
}

}  // namespace minkflow
