#pragma once

// Traveling-wave solutions with xi = eta (s - upsilon t):
//
//   kink  (Type 1):  kappa = A1 tanh xi,  tau = A2 tanh xi,
//                    eta^2 + A1^2 = 1,  upsilon = eta / A2
//   bell  (Type 2):  kappa = B1 sech xi,  tau = B2 sech xi,
//                    eta = B1 / 2,  upsilon = -B2 / B1
//
// Substituting these back into their flow equations does not give zero;
// the residual evaluators below quantify by how much.

#include <cstddef>
#include <optional>
#include <vector>

namespace minkflow {

struct KinkParams {
  double A1 = 0.0;
  double A2 = 0.0;
  double eta = 0.0;
  double upsilon = 0.0;
  int p1 = 1;
  int p2 = 1;

  /// eta / A2, the stated wave speed.
  double upsilon_stated() const noexcept { return eta / A2; }
  /// A2 / eta, the alternative speed suggested by matching coefficients of the ansatz.
  double upsilon_balanced() const noexcept { return A2 / eta; }
};

struct BellParams {
  double B1 = 0.0;
  double B2 = 0.0;
  double eta = 0.0;
  double upsilon = 0.0;
  int p1 = 1;
  int p2 = 1;
};

struct KinkOptions {
  /// Sign of the root eta = +-sqrt(1 - A1^2).
  int eta_sign = +1;
  /// Replaces upsilon = eta / A2 when set.
  std::optional<double> upsilon_override;
};

struct BellOptions {
  std::optional<double> upsilon_override;
};

/// Throws ConstraintViolation unless 0 < |A1| < 1 and A2 != 0.
KinkParams kink_params(double A1, double A2, const KinkOptions& opts = {});
/// Throws ConstraintViolation unless B1 != 0 and B2 != 0.
BellParams bell_params(double B1, double B2, const BellOptions& opts = {});

struct KappaTau {
  double kappa = 0.0;
  double tau = 0.0;
};

inline double wave_variable(double eta, double upsilon, double s, double t) noexcept {
  return eta * (s - upsilon * t);
}

KappaTau eval_kink(const KinkParams& p, double s, double t) noexcept;
KappaTau eval_bell(const BellParams& p, double s, double t) noexcept;

/// Partial derivatives of the ansatz, computed by differentiating tanh/sech in closed form.
struct AnsatzJet {
  double kappa = 0.0, kappa_s = 0.0, kappa_ss = 0.0, kappa_sss = 0.0, kappa_t = 0.0;
  double tau = 0.0, tau_s = 0.0, tau_t = 0.0;
};

AnsatzJet kink_jet(const KinkParams& p, double s, double t) noexcept;
AnsatzJet bell_jet(const BellParams& p, double s, double t) noexcept;

struct PointResidual {
  double R1 = 0.0;
  std::optional<double> R2;  ///< empty where kappa = 0 makes R2 undefined
};

/// R1 = kappa_t + tau kappa
/// R2 = tau_t - (kappa_s^2 - kappa kappa_ss) / kappa^2 - kappa^2
PointResidual kink_residual(const KinkParams& p, double s, double t,
                            double eps_kappa = 1e-9) noexcept;
/// R1 = kappa_t - tau_s + tau kappa_s
/// R2 = tau_t - ((2 tau tau_s - kappa_sss) kappa - (tau^2 - kappa_ss) kappa_s) / kappa^2
///      - kappa kappa_s
PointResidual bell_residual(const BellParams& p, double s, double t,
                            double eps_kappa = 1e-9) noexcept;

/// Simplified R1 as a function of xi:
///   kink: -A1 eta upsilon sech^2 xi + A1 A2 tanh^2 xi
///   bell: eta (B1 upsilon + B2) sech xi tanh xi - B1 B2 eta sech^2 xi tanh xi
double kink_r1_closed_form(const KinkParams& p, double xi) noexcept;
double bell_r1_closed_form(const BellParams& p, double xi) noexcept;

/// sup over xi of |R1|: max(|A1 eta upsilon|, |A1 A2|) (the latter approached as |xi| -> inf).
double kink_r1_sup(const KinkParams& p) noexcept;
/// max over xi of |R1| when upsilon = -B2/B1: |B1 B2 eta| * 2 / (3 sqrt 3).
double bell_r1_max_balanced(const BellParams& p) noexcept;

/// (s, t) window for grid evaluation; values are stored row-major [t][s].
struct SolitonWindow {
  double s_min = -20.0, s_max = 20.0;
  std::size_t ns = 401;
  double t_min = 0.0, t_max = 10.0;
  std::size_t nt = 101;

  double s_at(std::size_t i) const noexcept;
  double t_at(std::size_t j) const noexcept;
};

struct SolitonGrid {
  SolitonWindow window;
  std::vector<double> kappa;
  std::vector<double> tau;
};

struct ResidualGrid {
  SolitonWindow window;
  std::vector<double> R1;
  std::vector<double> R2;              ///< NaN at excluded points
  std::vector<std::size_t> excluded;   ///< flat indices where R2 is undefined (kappa = 0)
  double max_abs_R1 = 0.0;
  double max_abs_R2 = 0.0;             ///< over non-excluded points
};

SolitonGrid eval_kink_grid(const KinkParams& p, const SolitonWindow& w);
SolitonGrid eval_bell_grid(const BellParams& p, const SolitonWindow& w);
ResidualGrid residual_type1(const KinkParams& p, const SolitonWindow& w);
ResidualGrid residual_type2(const BellParams& p, const SolitonWindow& w);

}  // namespace minkflow
