#pragma once

// Run configuration: JSON document with sections beam, slider, excitation,
// sim, ssim, pcs, signature, locomotion. Resolution order is preset (or the
// built-in defaults), then the config file, then --override key=value.

#include "slidelab/beam_rom.hpp"
#include "slidelab/contact.hpp"
#include "slidelab/locomotion.hpp"
#include "slidelab/ssim.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slidelab::config {

using Json = nlohmann::ordered_json;

enum class InitialCondition { centered, resting, low, high };

struct SimSection {
  int n_modes = 5;
  std::string mode = "pcs";  // pcs | fs | glued
  double s = 0.27;
  InitialCondition initial = InitialCondition::centered;
  double dt = 0.0;           // 0: excitation period / 2000
  double duration = 10.0;    // [s]
  int stride = 10;
  double station = 4.0 / 7.0;
  double gravity = 9.81;
  bool linear = false;
  bool contacts = true;
  double transient = 1.0;    // analysis ignores t < transient [s]
  double envelope_window = 1.0;  // [s]
  double activation_tol = 1e-9;
  double impulse_tol = 1e-11;
  double pgs_tol = 1e-12;
  int max_iter = 200;
  int max_halvings = 6;
};

struct SsimSection {
  double s_min = 0.05;
  double s_max = 0.95;
  int points = 500;
  double turning_tolerance = 1e-5;
  bool parallel = true;
};

struct PcsSection {
  double s_min = 0.05;
  double s_max = 0.5;
  int points = 50;
  double window = 1.0;
  double steady_rel = 0.01;
  double max_time = 10.0;
  int stride = 10;
  bool parallel = true;
};

struct SignatureSection {
  double s0 = 0.3;
  InitialCondition initial = InitialCondition::low;
  double max_time = 120.0;   // simulated budget [s]
  double chunk = 1.0;        // analysis chunk [s]
  double jump_ratio = 3.0;   // high level: envelope above jump_ratio x the first chunk
  double stop_window = 5.0;  // [s]
  double stop_tol = 0.01;    // spread of s over stop_window below this counts as stopped
  int record_stride = 100;
};

struct LocomotionCase {
  std::string name;
  loco::CaseConditions conditions;
  loco::BranchPhase phase = loco::BranchPhase::in_phase;
};

struct LocomotionSection {
  std::vector<LocomotionCase> cases;
  double stick_band = 0.2;
  double marginal_band = 0.5;
};

struct RunConfig {
  rom::BeamParameters beam;
  rom::SliderParameters slider;
  ssim::ExcitationParameters excitation;
  SimSection sim;
  SsimSection ssim;
  PcsSection pcs;
  SignatureSection signature;
  LocomotionSection locomotion;
  std::string out = "out";
  Json resolved;          // the document this config was parsed from
  std::uint64_t hash = 0; // FNV-1a of resolved.dump()
};

/// Full default document (Table parameters, Case 1 simulation settings).
Json default_document();

/// Preset names: table-default, case1, case2, case3, zero-excitation.
std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
Json preset_document(std::string_view name);

/// Recursive merge; unknown keys in `patch` raise ConfigError with their path.
void merge(Json& base, const Json& patch, const std::string& path = "");

/// "a.b.c=value"; value parsed as JSON, else taken as a string.
void apply_override(Json& doc, std::string_view assignment);

/// Validates the document and builds the config. Throws ConfigError.
RunConfig parse(const Json& doc);

Json read_file(const std::string& path);

/// Derived simulation inputs.
contact::Model build_model(const RunConfig& cfg, int n_modes);
contact::SimOptions sim_options(const RunConfig& cfg);
contact::SliderMode slider_mode(const RunConfig& cfg);
contact::SystemState initial_state(const RunConfig& cfg, const contact::Model& model, double s,
                                   InitialCondition ic);

std::string_view to_string(InitialCondition ic);

}  // namespace slidelab::config
