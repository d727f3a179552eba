#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace minkflow {

enum class Boundary { Periodic, OneSided };

/// Uniform discretization of the arc-length parameter.
///
/// OneSided grids include both endpoints (spacing L/(n-1)); periodic grids
/// exclude s_max, which is identified with s_min (spacing L/n).
class SGrid {
 public:
  static constexpr std::size_t kMinPoints = 5;

  SGrid(double s_min, double s_max, std::size_t n, Boundary boundary);

  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_max_; }
  std::size_t size() const noexcept { return n_; }
  Boundary boundary() const noexcept { return boundary_; }
  double spacing() const noexcept { return h_; }
  double at(std::size_t i) const noexcept { return s_min_ + static_cast<double>(i) * h_; }
  std::vector<double> points() const;

  friend bool operator==(const SGrid&, const SGrid&) = default;

 private:
  double s_min_;
  double s_max_;
  std::size_t n_;
  Boundary boundary_;
  double h_;
};

/// Second-order finite differences on an SGrid.
///
/// Interior rows use central stencils; periodic grids wrap, one-sided grids
/// switch to the nearest window of (order + 2) points at the ends.
namespace fd {

std::vector<double> d1(std::span<const double> f, const SGrid& grid);
std::vector<double> d2(std::span<const double> f, const SGrid& grid);
std::vector<double> d3(std::span<const double> f, const SGrid& grid);

/// Weights of the derivative of order `order` at `x0` from values at `nodes`
/// (Fornberg's recursion). Exposed for tests.
std::vector<double> weights(double x0, std::span<const double> nodes, int order);

}  // namespace fd

/// Curvature and torsion sampled on a grid.
struct CurvatureProfile {
  CurvatureProfile(SGrid grid, std::vector<double> kappa, std::vector<double> tau);

  static CurvatureProfile sample(const SGrid& grid, const std::function<double(double)>& kappa,
                                 const std::function<double(double)>& tau);
  static CurvatureProfile constant(const SGrid& grid, double kappa, double tau);

  SGrid grid;
  std::vector<double> kappa;
  std::vector<double> tau;
};

}  // namespace minkflow
