#include "slidelab/errors.hpp"
#include "slidelab/signal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace slidelab;
using std::numbers::pi;

namespace {

std::vector<double> tone(std::size_t n, double dt, double a, double f, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a * std::cos(2 * pi * f * dt * static_cast<double>(i) + phase);
  return x;
}

contact::ContactFrame frame(std::initializer_list<int> closed, std::uint8_t diagonal = 0) {
  contact::ContactFrame f;
  f.gap.fill(1e-5);
  for (int c : closed) {
    f.normal_impulse[static_cast<std::size_t>(c - 1)] = 1e-6;
    f.gap[static_cast<std::size_t>(c - 1)] = 0.0;
    f.state[static_cast<std::size_t>(c - 1)] = contact::ContactState::stick;
  }
  f.diagonal = diagonal;
  return f;
}

contact::Trajectory synthetic(const std::vector<contact::ContactFrame>& frames, double dt,
                              double period) {
  contact::Trajectory tr;
  tr.dt = dt;
  tr.stride = 1;
  tr.excitation_period = period;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    contact::Sample s;
    s.state.t = dt * static_cast<double>(i + 1);
    s.frame = frames[i];
    tr.samples.push_back(s);
  }
  return tr;
}

}  // namespace

TEST(Envelope, PureSinusoid) {
  const double dt = 1e-4;
  const auto x = tone(40000, dt, 2.5e-3, 123.0);
  const auto e = signal::envelope(x, dt, 1.0);
  EXPECT_NEAR(e.mean(0.1), 2.5e-3, 2.5e-6);
  for (std::size_t i = 4000; i < 36000; i += 997) EXPECT_NEAR(e.amplitude[i], 2.5e-3, 2.5e-6);
  for (double v : e.instantaneous) EXPECT_GE(v, 0.0);
}

TEST(Envelope, AmplitudeModulationOracle) {
  const double dt = 1e-4, f = 124.0, fm = 12.4, a = 1e-3;
  std::vector<double> x(40000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = dt * static_cast<double>(i);
    x[i] = a * (1 + 0.5 * std::cos(2 * pi * fm * t)) * std::cos(2 * pi * f * t);
  }
  const auto e = signal::envelope(x, dt, 0.1);
  for (std::size_t i = 4000; i < 36000; i += 101) {
    const double t = dt * static_cast<double>(i);
    const double expect = a * (1 + 0.5 * std::cos(2 * pi * fm * t));
    EXPECT_NEAR(e.instantaneous[i], expect, 0.02 * expect) << t;
  }
}

TEST(Envelope, Homogeneous) {
  const double dt = 1e-4;
  auto x = tone(20000, dt, 1e-3, 50.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += 3e-4 * std::sin(2 * pi * 7.0 * dt * i);
  const auto e1 = signal::envelope(x, dt, 0.5);
  for (double& v : x) v *= 3.7;
  const auto e2 = signal::envelope(x, dt, 0.5);
  for (std::size_t i = 0; i < x.size(); i += 50) {
    EXPECT_NEAR(e2.amplitude[i], 3.7 * e1.amplitude[i], 1e-12);
    EXPECT_NEAR(e2.instantaneous[i], 3.7 * e1.instantaneous[i], 1e-12);
  }
}

TEST(Envelope, Errors) {
  const auto x = tone(1000, 1e-3, 1.0, 10.0);
  EXPECT_THROW(signal::envelope(x, 1e-3, 2.0), DomainError);
  EXPECT_THROW(signal::envelope(x, 1e-3, 0.5, 0.0, 0.1), DomainError);
  EXPECT_NO_THROW(signal::envelope(x, 1e-3, 1.0, 0.0, 0.1));
}

TEST(Spectrum, SingleTone) {
  const double dt = 1e-4;
  const std::size_t n = 1 << 15;
  const double df = 1.0 / (dt * n);
  const auto peaks = signal::spectrum(tone(n, dt, 1.0, 250.3), dt);
  ASSERT_FALSE(peaks.empty());
  EXPECT_NEAR(peaks[0].frequency, 250.3, df);
  EXPECT_NEAR(peaks[0].amplitude, 1.0, 0.2);
  for (std::size_t i = 1; i < peaks.size(); ++i) EXPECT_LT(peaks[i].amplitude, 0.05);
}

TEST(Spectrum, TwoToneAndScaling) {
  const double dt = 1e-4;
  const std::size_t n = 1 << 15;
  const double df = 1.0 / (dt * n);
  auto x = tone(n, dt, 1.0, 124.0);
  const auto y = tone(n, dt, 0.4, 112.0);
  for (std::size_t i = 0; i < n; ++i) x[i] += y[i];
  const auto p = signal::spectrum(x, dt, 0.1);
  ASSERT_GE(p.size(), 2u);
  EXPECT_NEAR(p[0].frequency, 124.0, df);
  EXPECT_NEAR(p[1].frequency, 112.0, df);
  for (double& v : x) v *= 1e-4;
  const auto q = signal::spectrum(x, dt, 0.1);
  ASSERT_EQ(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i].frequency, q[i].frequency);
  EXPECT_THROW(signal::spectrum(std::vector<double>(1000, 0.0), dt), DomainError);
}

TEST(Contacts, Labels) {
  using L = signal::EpisodeLabel;
  EXPECT_EQ(signal::label_for(frame({}), 1e-11), L::free_flight);
  EXPECT_EQ(signal::label_for(frame({1}), 1e-11), L::single_p1);
  EXPECT_EQ(signal::label_for(frame({2}), 1e-11), L::single_p2);
  EXPECT_EQ(signal::label_for(frame({3}), 1e-11), L::single_p3);
  EXPECT_EQ(signal::label_for(frame({4}), 1e-11), L::single_p4);
  EXPECT_EQ(signal::label_for(frame({1, 4}), 1e-11), L::double_upper);
  EXPECT_EQ(signal::label_for(frame({2, 3}), 1e-11), L::double_lower);
  EXPECT_EQ(signal::label_for(frame({1, 3}), 1e-11), L::diagonal_p1p3);
  EXPECT_EQ(signal::label_for(frame({2, 4}), 1e-11), L::diagonal_p2p4);
  EXPECT_EQ(signal::label_for(frame({1, 2}), 1e-11), L::other);
  // impulse below the tolerance counts as open even with zero gap
  EXPECT_EQ(signal::label_for(frame({1}), 1e-5), L::free_flight);
}

TEST(Contacts, ExactEpisodeBoundariesAndHits) {
  std::vector<contact::ContactFrame> f;
  for (int i = 0; i < 3; ++i) f.push_back(frame({}));
  for (int i = 0; i < 2; ++i) f.push_back(frame({2}));
  for (int i = 0; i < 4; ++i) f.push_back(frame({2, 3}));
  f.push_back(frame({1, 3}, 1));
  for (int i = 0; i < 2; ++i) f.push_back(frame({}));
  f.push_back(frame({2, 4}, 2));
  const double dt = 0.01;
  const auto tr = synthetic(f, dt, 0.05);
  const auto c = signal::classify_contacts(tr, {});
  ASSERT_EQ(c.episodes.size(), 6u);
  const double starts[6] = {0, 3, 5, 9, 10, 12};
  const double ends[6] = {3, 5, 9, 10, 12, 13};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(c.episodes[i].start, starts[i] * dt, 1e-12) << i;
    EXPECT_NEAR(c.episodes[i].end, ends[i] * dt, 1e-12) << i;
    if (i > 0) EXPECT_NEAR(c.episodes[i].start, c.episodes[i - 1].end, 1e-15);
  }
  EXPECT_EQ(c.episodes[3].label, signal::EpisodeLabel::diagonal_p1p3);
  EXPECT_TRUE(c.episodes[3].pitch_limit_hit);
  EXPECT_FALSE(c.episodes[2].pitch_limit_hit);
  EXPECT_EQ(c.stats.pitch_hits, 2);
  EXPECT_NEAR(c.stats.hits_per_period, 2.0 / (13 * dt / 0.05), 1e-12);
  double sum = 0.0;
  for (double v : c.stats.time_fraction) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(c.stats.stick_fraction[1], 1.0, 1e-12);

  // idempotent: classifying again gives the same episodes
  const auto again = signal::classify_contacts(tr, {});
  ASSERT_EQ(again.episodes.size(), c.episodes.size());
  for (std::size_t i = 0; i < c.episodes.size(); ++i) {
    EXPECT_EQ(again.episodes[i].label, c.episodes[i].label);
    EXPECT_EQ(again.episodes[i].start, c.episodes[i].start);
  }
}

TEST(Contacts, PitchHitHysteresis) {
  std::vector<contact::ContactFrame> f(8, frame({}));
  auto tr = synthetic(f, 0.01, 0.04);
  const double beta[8] = {0.0, 0.99, 0.97, 0.99, 0.6, 0.99, 0.4, 0.99};
  for (std::size_t i = 0; i < 8; ++i) tr.samples[i].beta_rel = beta[i] * 5e-3;
  signal::ClassifyOptions opt;
  opt.pitch_limit = 5e-3;
  // 0.97 and 0.6 do not release; 0.4 does
  EXPECT_EQ(signal::classify_contacts(tr, opt).stats.pitch_hits, 2);
}

TEST(Transport, TelescopingAndErrors) {
  std::vector<double> t, s;
  for (int i = 0; i <= 1000; ++i) {
    t.push_back(i * 1e-3);
    s.push_back(0.3 + 1e-4 * std::sin(i * 0.037) - 2e-5 * i * 1e-3);
  }
  const double period = 0.0123;
  const auto tr = signal::transport_per_period(t, s, period);
  double sum = 0.0;
  for (double d : tr.ds) sum += d;
  EXPECT_NEAR(sum, tr.total, 1e-15);
  EXPECT_NEAR(tr.mean, tr.total / static_cast<double>(tr.ds.size()), 1e-18);
  // total equals the displacement over the whole periods covered
  const double t_end = period * static_cast<double>(tr.ds.size());
  const auto it = std::lower_bound(t.begin(), t.end(), t_end);
  const auto i = static_cast<std::size_t>(it - t.begin());
  const double a = (t_end - t[i - 1]) / (t[i] - t[i - 1]);
  EXPECT_NEAR(tr.total, s[i - 1] + a * (s[i] - s[i - 1]) - s[0], 1e-15);
  EXPECT_THROW(signal::transport_per_period(std::vector<double>{0, 0.01, 0.02},
                                            std::vector<double>{0, 0, 0}, 0.01),
               DomainError);
}

TEST(Phase, ConstructedLag) {
  const double dt = 1e-4, f = 100.0;
  const auto base = tone(5000, dt, 1.0, f);
  const auto x = tone(5000, dt, 3.0, f, -1.0);
  EXPECT_NEAR(signal::phase_relation(x, base, dt, 2 * pi * f), -1.0, 0.01);
  const auto anti = tone(5000, dt, 3.0, f, pi - 0.05);
  EXPECT_NEAR(std::abs(signal::phase_relation(anti, base, dt, 2 * pi * f)), pi - 0.05, 0.01);
  EXPECT_THROW(signal::phase_relation(std::vector<double>(10, 0.0), std::vector<double>(10, 0.0),
                                      dt, 2 * pi * f),
               DomainError);
}
