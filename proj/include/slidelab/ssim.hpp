#pragma once

// Single-term harmonic balance of the slider-beam modal equation and the
// resulting amplitude-versus-slider-position manifold.
//
//   (-(1+mu) r^2 + 2 i D r + 1 + 3/4 kappa q^2) q e^{i theta} = gamma r^2 w0/L,
//
// r = Omega/omega. Squaring the modulus gives a cubic in x = q^2.

#include "slidelab/beam_rom.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace slidelab::ssim {

struct ExcitationParameters {
  double base_amplitude = 0.0;   // w0/L
  double frequency_ratio = 0.0;  // Omega/omega
  void validate() const;
};

enum class Stability { stable, unstable };
enum class BranchLabel { low, intermediate, high };

std::string_view to_string(Stability s);
std::string_view to_string(BranchLabel b);

struct SsimPoint {
  double s = 0.0;
  double amplitude = 0.0;  // q_hat
  double phase = 0.0;      // theta in [-pi, pi]
  Stability stability = Stability::stable;
  BranchLabel label = BranchLabel::high;
  double w_station_over_h = 0.0;  // filled by sweep_ssim
};

struct AmplitudeSolution {
  std::vector<SsimPoint> points;  // ascending amplitude
  bool degenerate = false;        // tangency: two distinct roots
};

struct StabilityLabels {
  std::vector<Stability> labels;
  bool degenerate = false;
};

/// Real non-negative roots x of k^2 x^3 + 2 a k x^2 + (a^2 + b^2) x - F^2 = 0,
/// a = 1 - (1+mu) r^2, b = 2 D r, k = 3/4 kappa, F = gamma r^2 w0/L.
/// Roots closer than the tangency tolerance are merged; `merged` reports it.
struct CubicRoots {
  std::vector<double> x;  // ascending
  bool merged = false;
  int tangent_index = -1;
};
CubicRoots solve_amplitude_cubic(double a, double b, double k, double f);

/// Discriminant of the cubic above in the scaled variable (sign only is meaningful).
double amplitude_cubic_discriminant(const rom::RomCoefficients& c, const ExcitationParameters& e);

AmplitudeSolution solve_amplitudes(const rom::RomCoefficients& c, const ExcitationParameters& e);

/// Root-count rule: 1 -> stable, 3 -> stable/unstable/stable. Two roots
/// (tangency) sets the degenerate flag; tangent_index marks the double root.
StabilityLabels classify_stability(std::span<const double> sorted_amplitudes,
                                   int tangent_index = -1);

double effective_frequency_ratio(const rom::RomCoefficients& c, double q_hat);

std::optional<double> backbone_amplitude(const rom::RomCoefficients& c, double frequency_ratio);

double phase_lag(const rom::RomCoefficients& c, const ExcitationParameters& e, double q_hat);

std::complex<double> shb_residual(const rom::RomCoefficients& c, const ExcitationParameters& e,
                                  double q_hat, double theta);

/// Lower bound on the response amplitude above which the response is almost
/// periodic rather than strongly modulated; g is the clearance.
double modulation_threshold(double restitution, double clearance);

// ---------------------------------------------------------------------------

enum class Execution { serial, parallel };

struct SweepOptions {
  double station = 4.0 / 7.0;
  double turning_tolerance = 1e-5;
  bool linear = false;  // kappa = 0
  Execution execution = Execution::parallel;
};

struct SsimBranch {
  std::vector<SsimPoint> points;
  std::vector<double> turning_points;  // s at birth/death when interior
};

struct SsimSweep {
  std::vector<SsimBranch> branches;
  std::vector<double> turning_points;
  std::vector<std::optional<double>> backbone;  // per grid point
  std::vector<double> s_grid;
  bool isolated_bubble = false;      // 3-root interval closed on both sides
  int high_backbone_crossings = 0;   // sign changes of q_high - q_backbone
};

SsimSweep sweep_ssim(const rom::BeamParameters& beam, const rom::SliderParameters& slider,
                     const ExcitationParameters& exc, std::span<const double> s_grid,
                     const SweepOptions& opt = {});

std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace slidelab::ssim
