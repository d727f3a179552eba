#pragma once

// Time evolution of (kappa, tau) for inextensible spacelike curve flows:
//
//   kappa_t = alpha_s - tau beta
//   tau_t   = gamma_s + kappa beta,   gamma = (alpha tau - beta_s) / kappa
//
// integrated by the method of lines (second-order stencils in s, classical
// RK4 in t).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "minkflow/grid.hpp"

namespace minkflow {

inline constexpr double kDefaultEpsKappa = 1e-9;
inline constexpr double kDefaultBlowUp = 1e6;

/// gamma = (alpha tau - beta_s) / kappa with beta_s from fd::d1.
/// Throws SingularCurvature (first offending index) if |kappa| <= eps_kappa.
std::vector<double> derive_gamma(std::span<const double> alpha, std::span<const double> beta,
                                 const CurvatureProfile& profile,
                                 double eps_kappa = kDefaultEpsKappa);

/// alpha, beta and the s-derivatives the right-hand side needs. Presets
/// that know beta in terms of kappa fill the derivatives with direct
/// stencils on kappa (e.g. beta = kappa_s gives beta_ss = d3(kappa)).
struct VelocityJet {
  std::vector<double> alpha, alpha_s;
  std::vector<double> beta, beta_s, beta_ss;
};

/// Frame velocities (alpha, beta, gamma). gamma and gamma_s are always
/// derived from alpha, beta and the profile; there is no way to set them.
class VelocityTriple {
 public:
  /// Derivatives of alpha and beta by finite differences.
  static VelocityTriple from_fields(const CurvatureProfile& profile, std::vector<double> alpha,
                                    std::vector<double> beta,
                                    double eps_kappa = kDefaultEpsKappa);
  static VelocityTriple from_jet(const CurvatureProfile& profile, VelocityJet jet,
                                 double eps_kappa = kDefaultEpsKappa);

  const SGrid& grid() const noexcept { return grid_; }
  std::span<const double> alpha() const noexcept { return jet_.alpha; }
  std::span<const double> beta() const noexcept { return jet_.beta; }
  std::span<const double> gamma() const noexcept { return gamma_; }
  std::span<const double> alpha_s() const noexcept { return jet_.alpha_s; }
  std::span<const double> beta_s() const noexcept { return jet_.beta_s; }
  /// ((alpha tau)_s - beta_ss) / kappa - (alpha tau - beta_s) kappa_s / kappa^2
  std::span<const double> gamma_s() const noexcept { return gamma_s_; }

 private:
  VelocityTriple(SGrid grid, VelocityJet jet) : grid_(grid), jet_(std::move(jet)) {}

  SGrid grid_;
  VelocityJet jet_;
  std::vector<double> gamma_;
  std::vector<double> gamma_s_;
};

/// {alpha, beta, gamma} = {0, kappa, -kappa_s/kappa}
VelocityTriple type1_velocity(const CurvatureProfile& profile,
                              double eps_kappa = kDefaultEpsKappa);
/// {alpha, beta, gamma} = {tau, kappa_s, (tau^2 - kappa_ss)/kappa}
VelocityTriple type2_velocity(const CurvatureProfile& profile,
                              double eps_kappa = kDefaultEpsKappa);

struct RhsValues {
  std::vector<double> kappa_t;
  std::vector<double> tau_t;
};

RhsValues evolution_rhs(const CurvatureProfile& profile, const VelocityTriple& vel);

/// Builds the velocity triple for a stage profile at time t.
struct VelocityPreset {
  std::string name;
  std::function<VelocityTriple(const CurvatureProfile&, double t)> make;
};

VelocityPreset type1_preset(double eps_kappa = kDefaultEpsKappa);
VelocityPreset type2_preset(double eps_kappa = kDefaultEpsKappa);
/// alpha = beta = 0.
VelocityPreset static_preset(double eps_kappa = kDefaultEpsKappa);

struct EvolutionState {
  double t = 0.0;
  CurvatureProfile profile;
};

struct EvolutionOptions {
  double blowup = kDefaultBlowUp;
  /// Record every stride-th state (the initial state is always recorded).
  std::size_t stride = 1;
};

struct TrajectoryMeta {
  std::string preset;
  double dt = 0.0;
  std::size_t stride = 1;
  int stencil_order = 2;
  Boundary boundary = Boundary::Periodic;
  std::vector<std::string> warnings;
};

struct EvolutionTrajectory {
  std::vector<EvolutionState> states;
  TrajectoryMeta meta;
};

/// One classical RK4 step; each stage rebuilds the velocities from its own profile.
EvolutionState step(const EvolutionState& state, const VelocityPreset& preset, double dt,
                    const EvolutionOptions& opts = {});

/// Repeated step(). Errors carry the failing step index.
EvolutionTrajectory evolve(const EvolutionState& initial, const VelocityPreset& preset, double dt,
                           std::size_t steps, const EvolutionOptions& opts = {});

/// Heuristic explicit-stepping bound dt <= ds^2 / (4 max(1, max|kappa|, max|tau|)).
/// Conservative for the dispersive presets; only used to emit a warning.
double stability_hint(const CurvatureProfile& profile);

struct CompatibilityResiduals {
  std::vector<double> t;      ///< interior time levels
  std::vector<double> kappa;  ///< |d_t kappa - (alpha_s - tau beta)|, row-major [t][s]
  std::vector<double> tau;    ///< |d_t tau - (gamma_s + kappa beta)|, row-major [t][s]
  std::size_t s_count = 0;
  double max_kappa = 0.0;
  double max_tau = 0.0;
};

/// Central differences in t against the flow equations on interior (s, t)
/// points of a trajectory recorded at uniform spacing.
CompatibilityResiduals compatibility_residuals(const EvolutionTrajectory& traj,
                                               const VelocityPreset& preset);

}  // namespace minkflow
