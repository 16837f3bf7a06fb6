#pragma once

// Post-processing of sampled trajectories: Hilbert envelope, spectrum,
// contact-sequence episodes, per-period transport and phase.

#include "slidelab/contact.hpp"

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace slidelab::signal {

struct EnvelopeSeries {
  std::vector<double> t;
  std::vector<double> amplitude;      // moving mean of the analytic magnitude
  std::vector<double> instantaneous;  // analytic magnitude
  double window = 0.0;                // [s]

  /// Mean of the instantaneous magnitude, ignoring `trim` of each end.
  double mean(double trim = 0.05) const;
};

/// Analytic signal of x (after removing the linear trend), via FFT.
std::vector<std::complex<double>> analytic_signal(std::span<const double> x);

/// Uniformly sampled x with step dt. If excitation_period > 0 the window must
/// span at least 10 periods.
EnvelopeSeries envelope(std::span<const double> x, double dt, double window_s, double t0 = 0.0,
                        double excitation_period = 0.0);

struct Peak {
  double frequency = 0.0;  // [Hz]
  double amplitude = 0.0;  // sinusoid amplitude estimate
};

/// Hann-windowed amplitude spectrum; local maxima above relative_floor times
/// the largest bin, sorted by descending amplitude. Needs >= 2^14 samples.
std::vector<Peak> spectrum(std::span<const double> x, double dt, double relative_floor = 1e-2);

enum class EpisodeLabel {
  free_flight,
  single_p1,
  single_p2,
  single_p3,
  single_p4,
  double_upper,
  double_lower,
  diagonal_p1p3,
  diagonal_p2p4,
  other,
};
inline constexpr int kEpisodeLabels = 10;
std::string_view to_string(EpisodeLabel l);

struct ContactEpisode {
  double start = 0.0;
  double end = 0.0;
  EpisodeLabel label = EpisodeLabel::free_flight;
  bool pitch_limit_hit = false;
  std::array<double, 4> sliding_direction{};  // mean of +1 slip right, -1 slip left, 0 stick
};

struct ContactStatistics {
  std::array<double, kEpisodeLabels> time_fraction{};
  int pitch_hits = 0;
  double hits_per_period = 0.0;
  std::array<double, 4> stick_fraction{};  // of the time each contact is closed
  std::array<double, 4> slip_left_fraction{};
  std::array<double, 4> slip_right_fraction{};
};

struct ContactClassification {
  std::vector<ContactEpisode> episodes;
  ContactStatistics stats;
};

struct ClassifyOptions {
  double impulse_tol = 1e-11;
  double pitch_limit = 0.0;  // beta_rel threshold source; 0 disables the angle test
  double pitch_fraction = 0.98;
  double pitch_release = 0.5;  // a hit ends below this fraction of the limit
  double t_from = 0.0;       // ignore samples before this time
};

EpisodeLabel label_for(const contact::ContactFrame& f, double impulse_tol);

ContactClassification classify_contacts(const contact::Trajectory& tr, const ClassifyOptions& opt);

struct Transport {
  std::vector<double> t;   // period boundaries (end of each period)
  std::vector<double> ds;  // s(t_k) - s(t_{k-1})
  double mean = 0.0;
  double total = 0.0;
};

/// s sampled at multiples of `period` (linear interpolation), first differences.
Transport transport_per_period(std::span<const double> t, std::span<const double> s,
                               double period);
Transport transport_per_period(const contact::Trajectory& tr, double t_from = 0.0);

/// Phase of x relative to base at angular frequency omega [rad/s] by
/// single-frequency projection over whole periods; in [-pi, pi].
double phase_relation(std::span<const double> x, std::span<const double> base, double dt,
                      double omega);
/// Elastic station displacement against the base, from t_from on.
double phase_relation(const contact::Trajectory& tr, double t_from = 0.0);

}  // namespace slidelab::signal
