#pragma once

// Vector algebra in Minkowski 3-space with signature (+,+,-).
// The third component is the timelike axis.

#include <cmath>
#include <ostream>

namespace minkflow {

struct Vec3M {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Vec3M& operator+=(const Vec3M& o) noexcept {
    x1 += o.x1;
    x2 += o.x2;
    x3 += o.x3;
    return *this;
  }
  constexpr Vec3M& operator-=(const Vec3M& o) noexcept {
    x1 -= o.x1;
    x2 -= o.x2;
    x3 -= o.x3;
    return *this;
  }
  constexpr Vec3M& operator*=(double k) noexcept {
    x1 *= k;
    x2 *= k;
    x3 *= k;
    return *this;
  }

  friend constexpr Vec3M operator+(Vec3M a, const Vec3M& b) noexcept { return a += b; }
  friend constexpr Vec3M operator-(Vec3M a, const Vec3M& b) noexcept { return a -= b; }
  friend constexpr Vec3M operator-(const Vec3M& a) noexcept { return {-a.x1, -a.x2, -a.x3}; }
  friend constexpr Vec3M operator*(double k, Vec3M a) noexcept { return a *= k; }
  friend constexpr Vec3M operator*(Vec3M a, double k) noexcept { return a *= k; }
  friend constexpr Vec3M operator/(Vec3M a, double k) noexcept { return a *= (1.0 / k); }
  friend constexpr bool operator==(const Vec3M&, const Vec3M&) = default;

  bool is_finite() const noexcept {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
  }
};

inline std::ostream& operator<<(std::ostream& os, const Vec3M& v) {
  return os << '(' << v.x1 << ", " << v.x2 << ", " << v.x3 << ')';
}

namespace axis {
inline constexpr Vec3M e1{1.0, 0.0, 0.0};
inline constexpr Vec3M e2{0.0, 1.0, 0.0};
inline constexpr Vec3M e3{0.0, 0.0, 1.0};
}  // namespace axis

enum class CausalClass { Spacelike, Timelike, Null };

inline constexpr double kDefaultCausalTol = 1e-12;

/// <a,b> = a1 b1 + a2 b2 - a3 b3
constexpr double minkowski_dot(const Vec3M& a, const Vec3M& b) noexcept {
  return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3;
}

/// The zero vector counts as spacelike.
CausalClass causal_class(const Vec3M& a, double tol = kDefaultCausalTol);

/// Metric-adjoint cross product: <a ^ b, c> = det[a; b; c] for every c.
constexpr Vec3M lorentz_cross(const Vec3M& a, const Vec3M& b) noexcept {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, -(a.x1 * b.x2 - a.x2 * b.x1)};
}

/// sqrt(|<a,a>|)
inline double minkowski_norm(const Vec3M& a) noexcept {
  return std::sqrt(std::abs(minkowski_dot(a, a)));
}

/// Throws Error(NullVector) when minkowski_norm(a) <= tol.
Vec3M normalize(const Vec3M& a, double tol = kDefaultCausalTol);

}  // namespace minkflow
