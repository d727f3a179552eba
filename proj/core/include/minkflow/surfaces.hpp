#pragma once

// Timelike ruled surfaces over a spacelike curve r(s):
//   normal surface    x(s, u) = r(s) + u N(s)
//   binormal surface  x(s, v) = r(s) + v B(s)
//
// Two independent evaluation paths:
//   * paper_* : the closed-form coefficients and curvatures as published;
//   * numeric_forms : finite differences on sampled surface points, with the
//     unit normal from lorentz_cross.
// They coincide for the binormal Gauss curvature and at u = 0 on the normal
// surface; elsewhere the published unit normal differs from x_s ^ x_u and the
// two paths disagree. Callers are expected to report both.

#include <array>
#include <cstddef>

#include "minkflow/frenet.hpp"
#include "minkflow/lorentz.hpp"

namespace minkflow {

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double e = 0.0, f = 0.0, g = 0.0;
  double W = 0.0;    ///< EG - F^2; < 0 for timelike surface points
  double eps = 1.0;  ///< <U, U>
};

struct CurvaturePair {
  double K = 0.0;
  double H = 0.0;
};

/// K = eps (eg - f^2) / W,  H = eps (Eg - 2Ff + Ge) / (2W)
CurvaturePair curvatures_from_forms(const FundamentalForms& ff);

struct RulerCoordinate {
  enum class Kind { Normal, Binormal };
  Kind kind = Kind::Normal;
  double value = 0.0;  ///< u for Normal, v for Binormal
};

/// Curvature, torsion and their s-derivatives at one curve point.
struct CurveJet {
  double kappa = 0.0;
  double kappa_s = 0.0;
  double tau = 0.0;
  double tau_s = 0.0;
};

/// Absolute tolerance on the squared quantities that end up under a square root.
inline constexpr double kRulingTol = 1e-10;

/// Throws DegenerateRuling when E = tau^2 u^2 + (1 + u kappa)^2 <= kRulingTol.
FundamentalForms paper_forms_normal(const CurveJet& c, double u);
CurvaturePair paper_curvatures_normal(const CurveJet& c, double u);

/// Throws NullNormal when |v^2 tau^2 - 1| <= kRulingTol and NotTimelike when
/// v^2 tau^2 < 1.
FundamentalForms paper_forms_binormal(const CurveJet& c, double v);
CurvaturePair paper_curvatures_binormal(const CurveJet& c, double v);

Vec3M surface_point_normal(const Vec3M& curve_point, const FrenetFrame& frame, double u) noexcept;
Vec3M surface_point_binormal(const Vec3M& curve_point, const FrenetFrame& frame,
                             double v) noexcept;

/// x[i][j] = x(s0 + (i - 2) ds, u0 + (j - 2) du).
struct SurfacePatch {
  std::array<std::array<Vec3M, 5>, 5> x{};
  double ds = 0.0;
  double du = 0.0;
};

struct PatchDerivatives {
  Vec3M x_s, x_u, x_ss, x_su, x_uu;
};

/// Second-order central differences at the patch centre. `spacing` 1 uses the
/// inner 3x3 block, 2 uses the outer ring.
PatchDerivatives patch_derivatives(const SurfacePatch& patch, int spacing = 1);

enum class NormalOrientation { Standard, Flipped };

/// U = normalize(x_s ^ x_u) (or its negative); throws NullVector if the
/// normal is null.
FundamentalForms numeric_forms(const SurfacePatch& patch,
                               NormalOrientation orientation = NormalOrientation::Standard);

/// |K(ds, du) - K(2ds, 2du)| / 3, the Richardson estimate of the
/// discretization error in the numeric Gauss curvature.
double numeric_gauss_error_estimate(const SurfacePatch& patch);

/// Patches sampled from a reconstructed curve around grid index i (needs
/// 2 <= i <= n - 3); the s-spacing is the curve's grid spacing.
SurfacePatch normal_patch(const ReconstructedCurve& curve, std::size_t i, double u, double du);
SurfacePatch binormal_patch(const ReconstructedCurve& curve, std::size_t i, double v, double dv);

/// tau tau_t u + (1 + u kappa) kappa_t; zero for an inextensible normal surface.
double inext_residual_normal(double kappa, double tau, double kappa_t, double tau_t,
                             double u) noexcept;
/// v^2 tau tau_t; zero for an inextensible binormal surface.
double inext_residual_binormal(double tau, double tau_t, double v) noexcept;

}  // namespace minkflow
