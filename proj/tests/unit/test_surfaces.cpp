#include <doctest.h>

#include <cmath>

#include "minkflow/errors.hpp"
#include "minkflow/surfaces.hpp"
#include "support/random.hpp"

using namespace minkflow;

namespace {

// For constant kappa, tau and the standard frame at s = 0:
//   normal surface:   x_s = (1 + u k) T + u t B,  x_u = N,  x_su = k T + t B,
//                     x_ss = (k + u (k^2 + t^2)) N,  x_uu = 0
//   binormal surface: x_s = T + v t N,  x_v = B,  x_sv = t N,
//                     x_ss = v t k T + (k + ...) N + v t^2 B,  x_vv = 0
// Working these through by hand gives K = t^2 / E^2 (normal, E = t^2 u^2 + (1 + u k)^2)
// and K = t^2 / D^2 (binormal, D = v^2 t^2 - 1).
double normal_K_exact(double k, double t, double u) {
  const double E = t * t * u * u + (1 + u * k) * (1 + u * k);
  return t * t / (E * E);
}
double binormal_K_exact(double t, double v) {
  const double D = v * v * t * t - 1.0;
  return t * t / (D * D);
}

ReconstructedCurve helix(double k, double t, double ds) {
  const auto n = static_cast<std::size_t>(std::llround(1.0 / ds)) + 1;
  const SGrid g(0.0, 1.0, n, Boundary::OneSided);
  return reconstruct_curve(CurvatureProfile::constant(g, k, t), FrenetFrame{});
}

}  // namespace

TEST_CASE("curvatures from forms") {
  FundamentalForms ff;
  ff.E = 2;
  ff.G = -1;
  ff.W = -2;
  ff.e = 1;
  ff.f = 3;
  ff.g = 0;
  const auto c = curvatures_from_forms(ff);
  CHECK(c.K == doctest::Approx(4.5));
  CHECK(c.H == doctest::Approx(0.25));
  ff.W = 0.0;
  CHECK_THROWS_AS(curvatures_from_forms(ff), Error);
}

TEST_CASE("published binormal curvature at kappa = 1, tau = 2, v = 1") {
  const CurveJet c{1.0, 0.0, 2.0, 0.0};
  CHECK(paper_curvatures_binormal(c, 1.0).K == 4.0 / 9.0);
  const auto ff = paper_forms_binormal(c, 1.0);
  CHECK(ff.E == -3.0);
  CHECK(curvatures_from_forms(ff).K == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("published normal curvature") {
  const CurveJet c{1.0, 0.0, 2.0, 0.0};
  CHECK(paper_curvatures_normal(c, 0.0).K == 4.0);
  CHECK(paper_curvatures_normal(c, 0.0).H == 0.0);
  CHECK(paper_curvatures_normal(c, 0.5).K == doctest::Approx(16.0 / (3.25 * 3.25)));
}

TEST_CASE("published formulas guard their domains") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  const CurveJet flat{1.0, 0.0, 0.0, 0.0};
  CHECK(code_of([&] { (void)paper_forms_normal(flat, -1.0); }) == ErrorCode::DegenerateRuling);
  const CurveJet c{1.0, 0.0, 2.0, 0.0};
  CHECK(code_of([&] { (void)paper_curvatures_binormal(c, 0.5); }) == ErrorCode::NullNormal);
  CHECK(code_of([&] { (void)paper_curvatures_binormal(c, 0.2); }) == ErrorCode::NotTimelike);
}

TEST_CASE("patch derivatives are exact on quadratics") {
  auto rng = testing::make_rng();
  const double a = testing::uniform(rng, -1, 1), b = testing::uniform(rng, -1, 1),
               c = testing::uniform(rng, -1, 1);
  SurfacePatch p;
  p.ds = 0.1;
  p.du = 0.2;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double s = (i - 2) * p.ds, u = (j - 2) * p.du;
      p.x[i][j] = {a * s * s + u, b * s * u, c * u * u + s};
    }
  for (int spacing : {1, 2}) {
    const auto d = patch_derivatives(p, spacing);
    CHECK(d.x_s.x3 == doctest::Approx(1.0));
    CHECK(d.x_u.x1 == doctest::Approx(1.0));
    CHECK(d.x_ss.x1 == doctest::Approx(2 * a));
    CHECK(d.x_su.x2 == doctest::Approx(b));
    CHECK(d.x_uu.x3 == doctest::Approx(2 * c));
  }
  CHECK_THROWS_AS(patch_derivatives(p, 3), Error);
}

TEST_CASE("numeric normal-surface curvature converges to the first-principles value") {
  auto rng = testing::make_rng();
  for (int trial = 0; trial < 5; ++trial) {
    const double k = testing::uniform(rng, 0.5, 2.0), t = testing::uniform(rng, 0.5, 3.0);
    const double u = testing::uniform(rng, -0.3, 0.8);
    const auto curve = helix(k, t, 1e-3);
    const auto patch = normal_patch(curve, 500, u, 1e-3);
    const auto K = curvatures_from_forms(numeric_forms(patch)).K;
    CHECK(K == doctest::Approx(normal_K_exact(k, t, u)).epsilon(1e-4));
    CHECK(numeric_gauss_error_estimate(patch) < 1e-4);
  }
}

TEST_CASE("numeric binormal-surface curvature converges to the first-principles value") {
  auto rng = testing::make_rng();
  for (int trial = 0; trial < 5; ++trial) {
    const double k = testing::uniform(rng, 0.5, 2.0), t = testing::uniform(rng, 1.0, 3.0);
    const double v = testing::uniform(rng, 1.5, 2.0) / t;  // v^2 t^2 > 1
    const auto curve = helix(k, t, 1e-3);
    const auto patch = binormal_patch(curve, 500, v, 1e-3);
    const auto ff = numeric_forms(patch);
    CHECK(ff.eps == 1.0);
    CHECK(curvatures_from_forms(ff).K == doctest::Approx(binormal_K_exact(t, v)).epsilon(1e-4));
    // Flipping the normal leaves K unchanged and negates H.
    const auto flipped = numeric_forms(patch, NormalOrientation::Flipped);
    CHECK(curvatures_from_forms(flipped).K ==
          doctest::Approx(curvatures_from_forms(ff).K).epsilon(1e-14));
    CHECK(curvatures_from_forms(flipped).H ==
          doctest::Approx(-curvatures_from_forms(ff).H).epsilon(1e-12));
  }
}

TEST_CASE("the two normal-surface paths meet at u = 0 and part ways elsewhere") {
  const auto curve = helix(1.0, 2.0, 1e-3);
  const CurveJet jet{1.0, 0.0, 2.0, 0.0};
  const auto at0 = curvatures_from_forms(numeric_forms(normal_patch(curve, 500, 0.0, 1e-3)));
  CHECK(at0.K == doctest::Approx(paper_curvatures_normal(jet, 0.0).K).epsilon(1e-6));
  CHECK(std::abs(at0.H) < 1e-6);
  const auto at5 = curvatures_from_forms(numeric_forms(normal_patch(curve, 500, 0.5, 1e-3)));
  CHECK(std::abs(at5.K - paper_curvatures_normal(jet, 0.5).K) > 1.0);
}

TEST_CASE("patch centre must leave room for the stencil") {
  const auto curve = helix(1.0, 2.0, 0.1);
  CHECK_THROWS_AS(normal_patch(curve, 1, 0.0, 0.1), Error);
  CHECK_THROWS_AS(binormal_patch(curve, curve.points.size() - 2, 1.0, 0.1), Error);
  CHECK_NOTHROW(normal_patch(curve, 2, 0.0, 0.1));
}

TEST_CASE("inextensibility residuals") {
  CHECK(inext_residual_normal(1.0, 2.0, 0.0, 0.0, 0.5) == 0.0);
  CHECK(inext_residual_binormal(2.0, 0.0, 1.0) == 0.0);
  CHECK(inext_residual_binormal(0.0, 3.0, 1.0) == 0.0);
  CHECK(inext_residual_normal(1.0, 2.0, -2.0, 1.0, 0.5) == -2.0);
}

TEST_CASE("published coefficients at sample points") {
  const CurveJet c{1.0, 0.0, 2.0, 0.0};
  const auto n1 = paper_forms_normal(c, 1.0);
  CHECK(n1.E == 8.0);
  CHECK(n1.f == doctest::Approx(6.0 / std::sqrt(8.0)));
  CHECK(paper_curvatures_normal(c, 1.0).K == doctest::Approx(36.0 / 64.0));
  const auto n0 = paper_forms_normal(c, 0.0);
  CHECK(n0.E == 1.0);
  CHECK(n0.G == -1.0);
  CHECK(n0.e == 0.0);
  CHECK(n0.f == 2.0);
  CHECK(paper_curvatures_normal({1.0, 0.3, 0.0, 0.0}, 0.7).K == 0.0);
  const auto b1 = paper_forms_binormal(c, 1.0);
  CHECK(b1.f == doctest::Approx(-2.0 / std::sqrt(3.0)));
  CHECK(paper_curvatures_binormal(c, 1.0).H == doctest::Approx(5.0 / (2.0 * 3.0 * std::sqrt(3.0))));
  CHECK(paper_curvatures_binormal({0.0, 0.0, 2.0, 0.0}, 3.0).H == 0.0);
}

TEST_CASE("plane and planar-curve surfaces") {
  SurfacePatch p;
  p.ds = p.du = 0.1;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) p.x[i][j] = {(i - 2) * 0.1, (j - 2) * 0.1, 0.0};
  const auto ff = numeric_forms(p);
  CHECK(ff.E == doctest::Approx(1.0));
  CHECK(ff.F == doctest::Approx(0.0));
  CHECK(ff.G == doctest::Approx(1.0));
  CHECK(std::abs(ff.e) + std::abs(ff.f) + std::abs(ff.g) < 1e-12);

  // tau = 0: both paths give f = 0 and K = 0.
  const auto curve = helix(1.0, 0.0, 1e-3);
  for (double u : {-0.5, 0.3, 2.0}) {
    const auto num = numeric_forms(normal_patch(curve, 500, u, 1e-3));
    const auto pap = paper_forms_normal({1.0, 0.0, 0.0, 0.0}, u);
    CHECK(std::abs(num.f) < 1e-6);
    CHECK(pap.f == 0.0);
    CHECK(std::abs(curvatures_from_forms(num).K) < 1e-6);
  }
}

TEST_CASE("numeric normal satisfies |x_s ^ x_u|^2 = |W|") {
  auto rng = testing::make_rng();
  for (int trial = 0; trial < 10; ++trial) {
    const double k = testing::uniform(rng, 0.2, 2.0), t = testing::uniform(rng, 0.2, 3.0);
    const auto curve = helix(k, t, 1e-2);
    const double w = testing::uniform(rng, 0.0, 1.0);
    const auto patch =
        trial % 2 ? normal_patch(curve, 50, w, 1e-2) : binormal_patch(curve, 50, 1.5 / t + w, 1e-2);
    const auto d = patch_derivatives(patch);
    const auto n = lorentz_cross(d.x_s, d.x_u);
    const auto ff = numeric_forms(patch);
    CHECK(std::abs(minkowski_dot(n, n)) == doctest::Approx(std::abs(ff.W)).epsilon(1e-8));
    CHECK(ff.W < 0.0);
  }
}

TEST_CASE("the normal surface is timelike wherever the formulas apply") {
  auto rng = testing::make_rng();
  for (int trial = 0; trial < 1000; ++trial) {
    const CurveJet c{testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3),
                     testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)};
    const double u = testing::uniform(rng, -3, 3);
    try {
      const auto ff = paper_forms_normal(c, u);
      CHECK(ff.W < 0.0);
      CHECK(ff.W == -ff.E);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateRuling);
    }
  }
}

TEST_CASE("numeric curvature converges at second order") {
  double prev = 0.0;
  for (double h : {4e-3, 2e-3, 1e-3}) {
    const auto curve = helix(1.0, 2.0, h);
    const auto mid = static_cast<std::size_t>(std::llround(0.5 / h));
    const double K = curvatures_from_forms(numeric_forms(normal_patch(curve, mid, 0.5, h))).K;
    const double err = std::abs(K - normal_K_exact(1.0, 2.0, 0.5));
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.2));
    prev = err;
  }
}
