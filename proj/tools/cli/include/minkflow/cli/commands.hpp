#pragma once

#include <exception>

#include "minkflow/cli/config.hpp"
#include "minkflow/evolution.hpp"

namespace minkflow::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

/// Validates the settings, computes, and writes results into the "out" key's
/// directory. Throws on any failure; nothing is left behind in that case.
void run(const RunConfig& config);

void run_evolve(const RunConfig& config);
void run_soliton(const RunConfig& config);
void run_surface(const RunConfig& config);
void run_reconstruct(const RunConfig& config);
void run_frame_check(const RunConfig& config);

/// The velocity preset a FlowSettings block describes.
VelocityPreset make_preset(const FlowSettings& flow);

/// 2 for configuration and parameter errors, 3 for numerical failures,
/// 4 for I/O, 1 for anything unexpected.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace minkflow::cli
