#include <doctest.h>

#include <cmath>
#include <numbers>

#include "minkflow/errors.hpp"
#include "minkflow/grid.hpp"

using namespace minkflow;

namespace {

constexpr double kPi = std::numbers::pi;

double max_err(const std::vector<double>& got, const SGrid& g, double (*exact)(double),
               std::size_t skip = 0) {
  double m = 0.0;
  for (std::size_t i = skip; i + skip < got.size(); ++i)
    m = std::max(m, std::abs(got[i] - exact(g.at(i))));
  return m;
}

double msin(double s) { return std::sin(s); }
double mcos(double s) { return std::cos(s); }
double mnsin(double s) { return -std::sin(s); }
double mncos(double s) { return -std::cos(s); }
double mexp(double s) { return std::exp(s); }

std::vector<double> sample(const SGrid& g, double (*f)(double)) {
  std::vector<double> v;
  for (double s : g.points()) v.push_back(f(s));
  return v;
}

}  // namespace

TEST_CASE("grid spacing depends on the boundary mode") {
  const SGrid p(0.0, 2.0 * kPi, 64, Boundary::Periodic);
  const SGrid o(0.0, 1.0, 11, Boundary::OneSided);
  CHECK(p.spacing() == doctest::Approx(2.0 * kPi / 64));
  CHECK(o.spacing() == doctest::Approx(0.1));
  CHECK(o.at(10) == doctest::Approx(1.0));
  CHECK(o.points().size() == 11);
  CHECK_THROWS_AS(SGrid(0.0, 1.0, 4, Boundary::OneSided), Error);
  CHECK_THROWS_AS(SGrid(1.0, 1.0, 10, Boundary::OneSided), Error);
}

TEST_CASE("Fornberg weights reproduce the central stencils") {
  const std::vector<double> three{-1.0, 0.0, 1.0};
  const auto w1 = fd::weights(0.0, three, 1);
  CHECK(w1[0] == doctest::Approx(-0.5));
  CHECK(w1[1] == doctest::Approx(0.0));
  CHECK(w1[2] == doctest::Approx(0.5));
  const auto w2 = fd::weights(0.0, three, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  const std::vector<double> five{-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto w3 = fd::weights(0.0, five, 3);
  CHECK(w3[0] == doctest::Approx(-0.5));
  CHECK(w3[1] == doctest::Approx(1.0));
  CHECK(w3[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w3[3] == doctest::Approx(-1.0));
  CHECK(w3[4] == doctest::Approx(0.5));
}

TEST_CASE("periodic derivatives converge at second order") {
  double prev[3] = {0, 0, 0};
  for (std::size_t n : {128u, 256u, 512u}) {
    const SGrid g(0.0, 2.0 * kPi, n, Boundary::Periodic);
    const auto f = sample(g, msin);
    const double e[3] = {max_err(fd::d1(f, g), g, mcos), max_err(fd::d2(f, g), g, mnsin),
                         max_err(fd::d3(f, g), g, mncos)};
    if (prev[0] > 0.0)
      for (int k = 0; k < 3; ++k) CHECK(prev[k] / e[k] == doctest::Approx(4.0).epsilon(0.05));
    for (int k = 0; k < 3; ++k) prev[k] = e[k];
  }
}

TEST_CASE("one-sided derivatives converge at second order including the ends") {
  double prev[3] = {0, 0, 0};
  for (std::size_t n : {101u, 201u, 401u}) {
    const SGrid g(0.0, 1.0, n, Boundary::OneSided);
    const auto f = sample(g, mexp);
    const double e[3] = {max_err(fd::d1(f, g), g, mexp), max_err(fd::d2(f, g), g, mexp),
                         max_err(fd::d3(f, g), g, mexp)};
    if (prev[0] > 0.0)
      for (int k = 0; k < 3; ++k) CHECK(prev[k] / e[k] == doctest::Approx(4.0).epsilon(0.15));
    for (int k = 0; k < 3; ++k) prev[k] = e[k];
  }
}

TEST_CASE("curvature profiles validate their samples") {
  const SGrid g(0.0, 1.0, 10, Boundary::OneSided);
  CHECK_THROWS_AS(CurvatureProfile(g, std::vector<double>(9, 1.0), std::vector<double>(10, 1.0)),
                  Error);
  std::vector<double> bad(10, 1.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(CurvatureProfile(g, bad, std::vector<double>(10, 1.0)), Error);
  const auto c = CurvatureProfile::constant(g, 2.0, 3.0);
  CHECK(c.kappa[9] == 2.0);
  CHECK(c.tau[0] == 3.0);
}
