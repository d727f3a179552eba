#pragma once

// Run configuration. Every setting is a string-valued key; sources are merged
// as defaults < config file < command-line flags, then checked against the
// subcommand before anything is computed.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "minkflow/cli/expr.hpp"
#include "minkflow/grid.hpp"
#include "minkflow/solitons.hpp"

namespace minkflow::cli {

enum class Command { Evolve, Soliton, Surface, Reconstruct, FrameCheck };

std::string_view to_string(Command c) noexcept;
std::optional<Command> command_from(std::string_view name) noexcept;

struct KeyInfo {
  std::string_view name;
  std::string_view help;
};

/// Every key any subcommand understands.
std::span<const KeyInfo> known_keys() noexcept;
/// Keys a subcommand accepts, in a fixed order.
std::vector<std::string_view> keys_for(Command c);

using KeyValues = std::map<std::string, std::string>;

/// Carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
/// Text starting with '{' is read as a run_meta.json echo instead, whose
/// "config" object supplies the keys.
KeyValues parse_config_text(std::string_view text, const std::string& origin);
KeyValues load_config_file(const std::filesystem::path& path);

/// The merged, checked configuration of one run.
struct RunConfig {
  Command command = Command::Evolve;
  KeyValues values;

  const std::string& at(const std::string& key) const;
  bool has(const std::string& key) const { return values.count(key) != 0; }
};

/// Throws ConfigError listing unknown keys, keys the subcommand does not use
/// and keys that do not apply to the chosen preset, family or surface kind.
RunConfig resolve_config(Command command, const KeyValues& file, const KeyValues& flags);

/// Variables available to alpha/beta expressions of the custom preset.
std::vector<std::string> velocity_variables();

struct GridSettings {
  double s_min = 0.0;
  double s_max = 1.0;
  std::size_t n = 0;
  Boundary boundary = Boundary::OneSided;
  SGrid grid() const { return SGrid(s_min, s_max, n, boundary); }
};

struct FlowSettings {
  std::string preset;  ///< type1, type2, static or custom
  std::optional<Expr> alpha, beta;
  double eps_kappa = 1e-9;
  double blowup = 1e6;
};

struct EvolveSettings {
  GridSettings grid;
  Expr kappa, tau;
  FlowSettings flow;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t stride = 1;
};

struct SolitonSettings {
  std::string family;  ///< kink or bell
  double A1 = 0.0, A2 = 0.0, B1 = 0.0, B2 = 0.0;
  int eta_sign = 1;
  std::optional<double> upsilon_override;
  SolitonWindow window;
};

struct SurfaceSettings {
  std::string kind;  ///< normal or binormal
  std::vector<double> rulings;
  double dw = 0.0;
  GridSettings grid;
  Expr kappa, tau;
  FlowSettings flow;
  std::size_t stride = 1;
};

struct ReconstructSettings {
  GridSettings grid;
  Expr kappa, tau;
  FlowSettings flow;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t stride = 1;
  std::optional<double> drift_limit;
  bool reorthonormalize = false;
};

struct FrameCheckSettings {
  GridSettings grid;
  Expr kappa, tau;
  bool reorthonormalize = false;
};

// Each throws ConfigError with every malformed or inconsistent value.
EvolveSettings evolve_settings(const RunConfig& c);
SolitonSettings soliton_settings(const RunConfig& c);
SurfaceSettings surface_settings(const RunConfig& c);
ReconstructSettings reconstruct_settings(const RunConfig& c);
FrameCheckSettings frame_check_settings(const RunConfig& c);

}  // namespace minkflow::cli
