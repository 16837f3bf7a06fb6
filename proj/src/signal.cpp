#include "slidelab/signal.hpp"

#include "slidelab/errors.hpp"

#include <fftw3.h>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace slidelab::signal {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

void transform(fftw_complex* in, fftw_complex* out, int n, int sign) {
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<double> detrended(std::span<const double> x) {
  const std::size_t n = x.size();
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    st += t;
    sx += x[i];
    stt += t * t;
    stx += t * x[i];
  }
  const double nn = static_cast<double>(n);
  const double den = nn * stt - st * st;
  const double slope = den != 0.0 ? (nn * stx - st * sx) / den : 0.0;
  const double icpt = (sx - slope * st) / nn;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - icpt - slope * static_cast<double>(i);
  return out;
}

}  // namespace

std::vector<std::complex<double>> analytic_signal(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("analytic_signal: need at least 2 samples");
  const std::vector<double> y = detrended(x);
  FftwBuffer a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.data[i][0] = y[i];
    a.data[i][1] = 0.0;
  }
  transform(a.data, b.data, static_cast<int>(n), FFTW_FORWARD);
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k < n; ++k) {
    double w = 0.0;
    if (k < (n + 1) / 2) w = 2.0;
    else if (n % 2 == 0 && k == half) w = 1.0;
    b.data[k][0] *= w;
    b.data[k][1] *= w;
  }
  transform(b.data, a.data, static_cast<int>(n), FFTW_BACKWARD);
  std::vector<std::complex<double>> z(n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = {a.data[i][0] * inv, a.data[i][1] * inv};
  return z;
}

double EnvelopeSeries::mean(double trim) const {
  const std::size_t n = instantaneous.size();
  if (n == 0) return 0.0;
  const auto skip = static_cast<std::size_t>(trim * static_cast<double>(n));
  const std::size_t lo = std::min(skip, n - 1);
  const std::size_t hi = std::max(lo + 1, n - skip);
  double sum = 0.0;
  for (std::size_t i = lo; i < hi; ++i) sum += instantaneous[i];
  return sum / static_cast<double>(hi - lo);
}

EnvelopeSeries envelope(std::span<const double> x, double dt, double window_s, double t0,
                        double excitation_period) {
  if (!(dt > 0.0)) throw DomainError("envelope: dt must be > 0");
  if (!(window_s > 0.0)) throw DomainError("envelope: window must be > 0");
  const double length = dt * static_cast<double>(x.size());
  if (window_s > length * (1.0 + 1e-9)) {
    throw DomainError(fmt::format("envelope: window {} s longer than the signal ({} s)",
                                  window_s, length));
  }
  if (excitation_period > 0.0 && window_s < 10.0 * excitation_period * (1.0 - 1e-9)) {
    throw DomainError(fmt::format("envelope: window {} s shorter than 10 excitation periods",
                                  window_s));
  }
  const auto z = analytic_signal(x);
  const std::size_t n = z.size();
  EnvelopeSeries e;
  e.window = window_s;
  e.t.resize(n);
  e.instantaneous.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.t[i] = t0 + dt * static_cast<double>(i);
    e.instantaneous[i] = std::abs(z[i]);
  }
  // Centred moving mean, truncated at the ends.
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + e.instantaneous[i];
  const auto w = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(window_s / dt)));
  const std::size_t left = w / 2;
  const std::size_t right = w - left;
  e.amplitude.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= left ? i - left : 0;
    const std::size_t hi = std::min(n, i + right);
    e.amplitude[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return e;
}

std::vector<Peak> spectrum(std::span<const double> x, double dt, double relative_floor) {
  const std::size_t n = x.size();
  if (n < (1u << 14)) {
    throw DomainError(fmt::format("spectrum: {} samples, at least 16384 required", n));
  }
  if (!(dt > 0.0)) throw DomainError("spectrum: dt must be > 0");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  FftwBuffer a(n), b(n);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(n - 1));
    wsum += w;
    a.data[i][0] = (x[i] - mean) * w;
    a.data[i][1] = 0.0;
  }
  transform(a.data, b.data, static_cast<int>(n), FFTW_FORWARD);
  const std::size_t nb = n / 2 + 1;
  std::vector<double> mag(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    mag[k] = 2.0 * std::hypot(b.data[k][0], b.data[k][1]) / wsum;
  }
  const double top = *std::max_element(mag.begin() + 1, mag.end());
  std::vector<Peak> peaks;
  const double df = 1.0 / (dt * static_cast<double>(n));
  for (std::size_t k = 1; k + 1 < nb; ++k) {
    if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] && mag[k] > relative_floor * top) {
      peaks.push_back({df * static_cast<double>(k), mag[k]});
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& p, const Peak& q) { return p.amplitude > q.amplitude; });
  return peaks;
}

std::string_view to_string(EpisodeLabel l) {
  switch (l) {
    case EpisodeLabel::free_flight: return "free_flight";
    case EpisodeLabel::single_p1: return "single_P1";
    case EpisodeLabel::single_p2: return "single_P2";
    case EpisodeLabel::single_p3: return "single_P3";
    case EpisodeLabel::single_p4: return "single_P4";
    case EpisodeLabel::double_upper: return "double_upper";
    case EpisodeLabel::double_lower: return "double_lower";
    case EpisodeLabel::diagonal_p1p3: return "diagonal_P1P3";
    case EpisodeLabel::diagonal_p2p4: return "diagonal_P2P4";
    case EpisodeLabel::other: return "other";
  }
  return "?";
}

EpisodeLabel label_for(const contact::ContactFrame& f, double impulse_tol) {
  unsigned mask = 0;
  for (unsigned i = 0; i < 4; ++i) {
    if (f.normal_impulse[i] > impulse_tol) mask |= 1u << i;
  }
  switch (mask) {
    case 0b0000: return EpisodeLabel::free_flight;
    case 0b0001: return EpisodeLabel::single_p1;
    case 0b0010: return EpisodeLabel::single_p2;
    case 0b0100: return EpisodeLabel::single_p3;
    case 0b1000: return EpisodeLabel::single_p4;
    case 0b1001: return EpisodeLabel::double_upper;
    case 0b0110: return EpisodeLabel::double_lower;
    case 0b0101: return EpisodeLabel::diagonal_p1p3;
    case 0b1010: return EpisodeLabel::diagonal_p2p4;
    default: return EpisodeLabel::other;
  }
}

ContactClassification classify_contacts(const contact::Trajectory& tr,
                                        const ClassifyOptions& opt) {
  ContactClassification out;
  auto& st = out.stats;
  const double step = tr.dt * tr.stride;
  std::array<double, 4> closed_time{};
  std::array<double, 4> slip_sum{};
  std::array<int, 4> slip_count{};
  double total = 0.0;
  bool prev_hit = false;
  ContactEpisode cur;
  bool open_episode = false;
  const auto close_episode = [&]() {
    if (!open_episode) return;
    for (std::size_t i = 0; i < 4; ++i) {
      cur.sliding_direction[i] = slip_count[i] > 0 ? slip_sum[i] / slip_count[i] : 0.0;
    }
    out.episodes.push_back(cur);
    open_episode = false;
  };
  for (const auto& smp : tr.samples) {
    const double t1 = smp.state.t;
    const double t0 = t1 - step;
    if (t0 < opt.t_from - 1e-12) continue;
    const EpisodeLabel label = label_for(smp.frame, opt.impulse_tol);
    const bool hit = smp.frame.diagonal != 0 ||
                     (opt.pitch_limit > 0.0 &&
                      std::abs(smp.beta_rel) >= opt.pitch_fraction * opt.pitch_limit);
    if (hit && !prev_hit) ++st.pitch_hits;
    // A hit ends only once the rotation has clearly left the limit.
    const bool released = smp.frame.diagonal == 0 &&
                          (opt.pitch_limit <= 0.0 ||
                           std::abs(smp.beta_rel) < opt.pitch_release * opt.pitch_limit);
    prev_hit = hit || (prev_hit && !released);
    if (!open_episode || label != cur.label) {
      close_episode();
      cur = ContactEpisode{};
      cur.start = t0;
      cur.label = label;
      slip_sum.fill(0.0);
      slip_count.fill(0);
      open_episode = true;
    }
    cur.end = t1;
    cur.pitch_limit_hit = cur.pitch_limit_hit || hit;
    st.time_fraction[static_cast<std::size_t>(label)] += step;
    total += step;
    for (std::size_t i = 0; i < 4; ++i) {
      if (smp.frame.normal_impulse[i] <= opt.impulse_tol) continue;
      closed_time[i] += step;
      const auto s = smp.frame.state[i];
      double dir = 0.0;
      if (s == contact::ContactState::stick) st.stick_fraction[i] += step;
      if (s == contact::ContactState::slip_left) {
        st.slip_left_fraction[i] += step;
        dir = -1.0;
      }
      if (s == contact::ContactState::slip_right) {
        st.slip_right_fraction[i] += step;
        dir = 1.0;
      }
      slip_sum[i] += dir;
      ++slip_count[i];
    }
  }
  close_episode();
  if (total > 0.0) {
    for (double& f : st.time_fraction) f /= total;
    st.hits_per_period = st.pitch_hits / (total / tr.excitation_period);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (closed_time[i] > 0.0) {
      st.stick_fraction[i] /= closed_time[i];
      st.slip_left_fraction[i] /= closed_time[i];
      st.slip_right_fraction[i] /= closed_time[i];
    }
  }
  return out;
}

Transport transport_per_period(std::span<const double> t, std::span<const double> s,
                               double period) {
  if (t.size() != s.size() || t.size() < 2) {
    throw DomainError("transport_per_period: need matching time and position series");
  }
  if (!(period > 0.0)) throw DomainError("transport_per_period: period must be > 0");
  const double span = t.back() - t.front();
  if (span < 3.0 * period * (1.0 - 1e-9)) {
    throw DomainError(fmt::format("transport_per_period: {} s is shorter than 3 periods", span));
  }
  const auto at = [&](double tq) {
    const auto it = std::lower_bound(t.begin(), t.end(), tq);
    if (it == t.begin()) return s.front();
    if (it == t.end()) return s.back();
    const auto i = static_cast<std::size_t>(it - t.begin());
    const double a = (tq - t[i - 1]) / (t[i] - t[i - 1]);
    return s[i - 1] + a * (s[i] - s[i - 1]);
  };
  Transport out;
  double tb = t.front();
  double sb = at(tb);
  const double first = sb;
  while (tb + period <= t.back() * (1.0 + 1e-15)) {
    const double te = tb + period;
    const double se = at(te);
    out.t.push_back(te);
    out.ds.push_back(se - sb);
    tb = te;
    sb = se;
  }
  out.total = sb - first;
  out.mean = out.total / static_cast<double>(out.ds.size());
  return out;
}

Transport transport_per_period(const contact::Trajectory& tr, double t_from) {
  std::vector<double> t, s;
  for (const auto& smp : tr.samples) {
    if (smp.state.t < t_from) continue;
    t.push_back(smp.state.t);
    s.push_back(smp.state.s);
  }
  return transport_per_period(t, s, tr.excitation_period);
}

double phase_relation(std::span<const double> x, std::span<const double> base, double dt,
                      double omega) {
  if (x.size() != base.size()) throw DomainError("phase_relation: series lengths differ");
  if (!(omega > 0.0) || !(dt > 0.0)) throw DomainError("phase_relation: omega, dt must be > 0");
  const double period = 2.0 * std::numbers::pi / omega;
  const auto per = period / dt;
  const auto whole = static_cast<std::size_t>(std::floor(static_cast<double>(x.size()) / per));
  if (whole < 2) throw DomainError("phase_relation: segment shorter than two periods");
  const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(whole) * per));
  std::complex<double> cx, cb;
  for (std::size_t i = 0; i < std::min(n, x.size()); ++i) {
    const std::complex<double> e = std::polar(1.0, -omega * dt * static_cast<double>(i));
    cx += x[i] * e;
    cb += base[i] * e;
  }
  double th = std::arg(cx) - std::arg(cb);
  while (th > std::numbers::pi) th -= 2.0 * std::numbers::pi;
  while (th < -std::numbers::pi) th += 2.0 * std::numbers::pi;
  return th;
}

double phase_relation(const contact::Trajectory& tr, double t_from) {
  std::vector<double> x, b;
  for (const auto& smp : tr.samples) {
    if (smp.state.t < t_from) continue;
    x.push_back(smp.w_elastic_station);
    b.push_back(smp.base);
  }
  return phase_relation(x, b, tr.dt * tr.stride, 2.0 * std::numbers::pi / tr.excitation_period);
}

}  // namespace slidelab::signal
