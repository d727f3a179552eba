#include "minkflow/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "minkflow/errors.hpp"

namespace minkflow {

SGrid::SGrid(double s_min, double s_max, std::size_t n, Boundary boundary)
    : s_min_(s_min), s_max_(s_max), n_(n), boundary_(boundary), h_(0.0) {
  if (!std::isfinite(s_min) || !std::isfinite(s_max) || !(s_max > s_min))
    throw Error(ErrorCode::InvalidArgument, "SGrid: require finite s_max > s_min");
  if (n < kMinPoints)
    throw Error(ErrorCode::InvalidArgument,
                "SGrid: need at least " + std::to_string(kMinPoints) + " points");
  const double span = s_max - s_min;
  h_ = boundary == Boundary::Periodic ? span / static_cast<double>(n)
                                      : span / static_cast<double>(n - 1);
}

std::vector<double> SGrid::points() const {
  std::vector<double> s(n_);
  for (std::size_t i = 0; i < n_; ++i) s[i] = at(i);
  return s;
}

namespace fd {

std::vector<double> weights(double x0, std::span<const double> nodes, int order) {
  // Fornberg, "Generation of finite difference formulas on arbitrarily
  // spaced grids" (Math. Comp. 1988).
  const int n = static_cast<int>(nodes.size());
  if (order < 0 || n <= order)
    throw Error(ErrorCode::InvalidArgument, "fd::weights: need more nodes than the order");
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

namespace {

// Central stencils in units of grid offsets; divided by h^order afterwards.
constexpr std::array<double, 3> kCentral1{-0.5, 0.0, 0.5};
constexpr std::array<double, 3> kCentral2{1.0, -2.0, 1.0};
constexpr std::array<double, 5> kCentral3{-0.5, 1.0, 0.0, -1.0, 0.5};

template <std::size_t W>
std::vector<double> apply(std::span<const double> f, const SGrid& grid, int order,
                          const std::array<double, W>& central) {
  const std::size_t n = grid.size();
  if (f.size() != n) throw Error(ErrorCode::InvalidArgument, "fd: array length does not match grid");
  constexpr std::ptrdiff_t half = static_cast<std::ptrdiff_t>(W / 2);
  const double scale = 1.0 / std::pow(grid.spacing(), order);
  std::vector<double> out(n, 0.0);

  auto central_at = [&](std::size_t i, auto index_of) {
    double acc = 0.0;
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      const double w = central[static_cast<std::size_t>(k + half)];
      if (w != 0.0) acc += w * f[index_of(static_cast<std::ptrdiff_t>(i) + k)];
    }
    return acc * scale;
  };

  if (grid.boundary() == Boundary::Periodic) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    auto wrap = [sn](std::ptrdiff_t j) { return static_cast<std::size_t>(((j % sn) + sn) % sn); };
    for (std::size_t i = 0; i < n; ++i) out[i] = central_at(i, wrap);
    return out;
  }

  auto direct = [](std::ptrdiff_t j) { return static_cast<std::size_t>(j); };
  const std::size_t lo = static_cast<std::size_t>(half);
  const std::size_t hi = n - 1 - lo;
  for (std::size_t i = lo; i <= hi; ++i) out[i] = central_at(i, direct);

  // One-sided rows: window of (order + 2) points clamped to the grid.
  const std::size_t width = static_cast<std::size_t>(order) + 2;
  auto one_sided = [&](std::size_t i, std::size_t start) {
    std::vector<double> nodes(width);
    for (std::size_t k = 0; k < width; ++k)
      nodes[k] = static_cast<double>(start + k) - static_cast<double>(i);
    const auto w = weights(0.0, nodes, order);
    double acc = 0.0;
    for (std::size_t k = 0; k < width; ++k) acc += w[k] * f[start + k];
    return acc * scale;
  };
  for (std::size_t i = 0; i < lo; ++i) out[i] = one_sided(i, 0);
  for (std::size_t i = hi + 1; i < n; ++i) out[i] = one_sided(i, n - width);
  return out;
}

}  // namespace

std::vector<double> d1(std::span<const double> f, const SGrid& grid) {
  return apply(f, grid, 1, kCentral1);
}
std::vector<double> d2(std::span<const double> f, const SGrid& grid) {
  return apply(f, grid, 2, kCentral2);
}
std::vector<double> d3(std::span<const double> f, const SGrid& grid) {
  return apply(f, grid, 3, kCentral3);
}

}  // namespace fd

CurvatureProfile::CurvatureProfile(SGrid g, std::vector<double> k, std::vector<double> t)
    : grid(g), kappa(std::move(k)), tau(std::move(t)) {
  if (kappa.size() != grid.size() || tau.size() != grid.size())
    throw Error(ErrorCode::InvalidArgument, "CurvatureProfile: array lengths must equal grid size");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(kappa[i]) || !std::isfinite(tau[i]))
      throw Error(ErrorCode::InvalidArgument, "CurvatureProfile: non-finite entry", i);
  }
}

CurvatureProfile CurvatureProfile::sample(const SGrid& grid,
                                          const std::function<double(double)>& kappa,
                                          const std::function<double(double)>& tau) {
  std::vector<double> k(grid.size());
  std::vector<double> t(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid.at(i);
    k[i] = kappa(s);
    t[i] = tau(s);
  }
  return CurvatureProfile(grid, std::move(k), std::move(t));
}

CurvatureProfile CurvatureProfile::constant(const SGrid& grid, double kappa, double tau) {
  return CurvatureProfile(grid, std::vector<double>(grid.size(), kappa),
                          std::vector<double>(grid.size(), tau));
}

}  // namespace minkflow
