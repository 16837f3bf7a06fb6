#pragma once

// The five workflows behind the command line. Each run_* returns its data and
// a JSON summary; each write_* puts CSV files and summary.json into a directory.

#include "slidelab/config.hpp"
#include "slidelab/contact.hpp"
#include "slidelab/signal.hpp"
#include "slidelab/ssim.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace slidelab::workflows {

using config::Json;
using config::RunConfig;

// --- ssim ------------------------------------------------------------------

struct SsimResult {
  ssim::SsimSweep sweep;
  Json summary;
};
SsimResult run_ssim(const RunConfig& cfg);
void write_ssim(const SsimResult& r, const std::filesystem::path& dir);

// --- simulate --------------------------------------------------------------

struct SimulationAnalysis {
  double t_from = 0.0;
  signal::EnvelopeSeries envelope;    // total station displacement [m]
  double envelope_mean = 0.0;         // [m]
  double envelope_fluctuation = 0.0;  // std/mean of the smoothed envelope
  double elastic_center_mean = 0.0;   // envelope mean of w(1/2)/L
  std::vector<signal::Peak> peaks;    // of the station displacement
  std::optional<double> side_peak;    // strongest peak other than Omega, as f/Omega
  std::optional<double> peak_separation;     // (Omega - side peak)/Omega
  std::optional<double> modulation_periods;  // envelope period in excitation periods
  signal::ContactClassification contacts;
  signal::Transport transport;
  double phase = 0.0;                 // elastic vs base [rad]
  double pitch_limit = 0.0;           // [rad]
  double ds_pitch = 0.0;              // exact pitching transport per period
};

/// Post-pass over a trajectory; samples before t_from are ignored.
SimulationAnalysis analyze(const contact::Trajectory& tr, const RunConfig& cfg, double t_from);

struct SimulateResult {
  contact::Trajectory trajectory;
  SimulationAnalysis analysis;
  Json summary;
};
SimulateResult run_simulate(const RunConfig& cfg);
void write_simulate(const SimulateResult& r, const RunConfig& cfg,
                    const std::filesystem::path& dir);

// --- pcs-sweep -------------------------------------------------------------

struct PcsComparison {
  double s = 0.0;
  double simulated = 0.0;              // q_hat equivalent
  std::optional<double> analytical;    // nearest stable root
  std::optional<double> relative_error;
};

struct PcsResult {
  std::vector<double> grid;
  contact::PcsPair sweeps;
  std::vector<PcsComparison> forward, backward;
  std::optional<double> backward_jump;  // s midway across the largest backward jump
  std::vector<double> analytical_turning_points;
  Json summary;
};
PcsResult run_pcs(const RunConfig& cfg);
void write_pcs(const PcsResult& r, const std::filesystem::path& dir);

// --- locomotion-report -----------------------------------------------------

struct LocomotionResult {
  Json report;
};
LocomotionResult run_locomotion(const RunConfig& cfg);
void write_locomotion(const LocomotionResult& r, const RunConfig& cfg,
                      const std::filesystem::path& dir);

// --- signature-move --------------------------------------------------------

enum class Phase { outward_low = 1, inward_high = 2, stopped = 3 };

struct SignatureChunk {
  double t_end = 0.0;
  double s = 0.0;
  double rate = 0.0;      // ds/dt over the chunk [1/s]
  double envelope = 0.0;  // w(1/2)/L envelope mean
  int phase = 0;          // 0 before classification, else Phase
};

struct SignatureResult {
  std::vector<SignatureChunk> chunks;
  std::vector<double> t, s, w_center;  // decimated record
  bool outward_drift = false;
  bool jump = false;
  bool inward_drift = false;
  bool stopped = false;
  bool complete = false;  // Phase 3 reached inside the budget
  double s_min = 0.0;
  double jump_time = 0.0;
  double stop_time = 0.0;
  double s_stop = 0.0;
  double simulated = 0.0;
  Json summary;
};
SignatureResult run_signature(const RunConfig& cfg);
void write_signature(const SignatureResult& r, const std::filesystem::path& dir);

}  // namespace slidelab::workflows
