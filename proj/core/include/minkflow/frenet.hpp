#pragma once

// Frenet frames of spacelike curves with timelike principal normal.
//
//   T_s = kappa N,   N_s = kappa T + tau B,   B_s = tau N
//   T_t = alpha N - beta B,   N_t = alpha T + gamma B,   B_t = beta T + gamma N

#include <optional>
#include <vector>

#include "minkflow/grid.hpp"
#include "minkflow/lorentz.hpp"

namespace minkflow {

/// (T, N, B): unit spacelike tangent, unit timelike normal, unit spacelike binormal.
struct FrenetFrame {
  Vec3M T = axis::e1;
  Vec3M N = axis::e3;
  Vec3M B = axis::e2;

  friend bool operator==(const FrenetFrame&, const FrenetFrame&) = default;
};

inline constexpr double kFrameTol = 1e-8;

/// Largest deviation of the six frame inner products from (1, -1, 1, 0, 0, 0).
double frame_defect(const FrenetFrame& f) noexcept;

struct FrameRate {
  Vec3M dT;
  Vec3M dN;
  Vec3M dB;
};

FrameRate frame_rate_s(const FrenetFrame& frame, double kappa, double tau) noexcept;
FrameRate frame_rate_t(const FrenetFrame& frame, double alpha, double beta, double gamma) noexcept;

/// Re-orthonormalize against the Minkowski metric (T first, then N, then B).
FrenetFrame reorthonormalize(const FrenetFrame& f);

struct FrameIntegrationOptions {
  /// FrameDrift is raised when frame_defect exceeds this; nullopt disables the check.
  std::optional<double> drift_limit = 1e-4;
  /// Re-orthonormalize after every step. Off by default so that drift stays measurable.
  bool reorthonormalize = false;
};

/// Classical RK4 across the grid; kappa and tau at half steps come from
/// four-point cubic interpolation of the samples.
std::vector<FrenetFrame> integrate_frame_s(const CurvatureProfile& profile,
                                           const FrenetFrame& initial,
                                           const FrameIntegrationOptions& opts = {});

struct ReconstructedCurve {
  SGrid grid;
  std::vector<Vec3M> points;
  std::vector<FrenetFrame> frames;
};

/// Integrates r_s = T together with the frame using the same RK4 scheme.
ReconstructedCurve reconstruct_curve(const CurvatureProfile& profile, const FrenetFrame& initial,
                                     const Vec3M& origin = {},
                                     const FrameIntegrationOptions& opts = {});

/// Inverse of reconstruct_curve: kappa = -<r_ss, N>, tau = -<B_s, N>, with
/// r_ss from the points and B_s from the stored binormals (second-order,
/// one-sided at the ends).
CurvatureProfile curvature_from_curve(const ReconstructedCurve& curve);

struct FrameDriftReport {
  double max_defect = 0.0;      ///< max over grid of frame_defect
  double tt = 0.0, nn = 0.0, bb = 0.0;  ///< max |<T,T>-1|, |<N,N>+1|, |<B,B>-1|
  double tn = 0.0, tb = 0.0, nb = 0.0;  ///< max |<T,N>|, |<T,B>|, |<N,B>|
};

FrameDriftReport measure_drift(const std::vector<FrenetFrame>& frames) noexcept;

}  // namespace minkflow
