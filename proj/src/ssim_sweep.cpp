#include "slidelab/errors.hpp"
#include "slidelab/ssim.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

namespace slidelab::ssim {

namespace {

constexpr double kLogEps = 1e-12;

double log_amp(double q) { return std::log(q + kLogEps); }

rom::RomCoefficients coefficients(const rom::BeamParameters& beam,
                                  const rom::SliderParameters& slider, const rom::RomBasis& basis,
                                  double s, bool linear) {
  rom::RomCoefficients c = rom::rom_coefficients(beam, slider, s, basis);
  if (linear) c.kappa = 0.0;
  return c;
}

std::size_t root_count(const rom::BeamParameters& beam, const rom::SliderParameters& slider,
                       const ExcitationParameters& exc, const rom::RomBasis& basis, double s,
                       bool linear) {
  return solve_amplitudes(coefficients(beam, slider, basis, s, linear), exc).points.size();
}

// Assign the smaller of the two root sets injectively into the larger one,
// minimising total log-amplitude distance; ties prefer equal stability.
std::vector<int> nearest_assignment(const std::vector<SsimPoint>& prev,
                                    const std::vector<SsimPoint>& next) {
  const bool forward = prev.size() <= next.size();
  const auto& small = forward ? prev : next;
  const auto& large = forward ? next : prev;
  std::vector<int> perm(large.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < small.size(); ++i) {
      const SsimPoint& a = small[i];
      const SsimPoint& b = large[static_cast<std::size_t>(perm[i])];
      cost += std::abs(log_amp(a.amplitude) - log_amp(b.amplitude));
      if (a.stability != b.stability) cost += 1e-9;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best.assign(perm.begin(), perm.begin() + static_cast<long>(small.size()));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Return map prev index -> next index (-1 if unmatched).
  std::vector<int> map(prev.size(), -1);
  if (forward) {
    for (std::size_t i = 0; i < best.size(); ++i) map[i] = best[i];
  } else {
    for (std::size_t i = 0; i < best.size(); ++i) map[static_cast<std::size_t>(best[i])] =
        static_cast<int>(i);
  }
  return map;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw DomainError("uniform_grid: n must be >= 1");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

SsimSweep sweep_ssim(const rom::BeamParameters& beam, const rom::SliderParameters& slider,
                     const ExcitationParameters& exc, std::span<const double> s_grid,
                     const SweepOptions& opt) {
  if (s_grid.empty()) throw DomainError("sweep_ssim: empty s grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] >= 0.0 && s_grid[i] <= 1.0)) {
      throw DomainError(fmt::format("sweep_ssim: s = {} outside [0, 1]", s_grid[i]));
    }
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw DomainError("sweep_ssim: s grid must be strictly increasing");
    }
  }
  if (!(opt.station >= 0.0 && opt.station <= 1.0)) {
    throw DomainError("sweep_ssim: measurement station outside [0, 1]");
  }
  const rom::RomBasis basis = rom::rom_basis();
  const double station_ratio =
      std::abs(rom::mode_shape(basis.lambda, opt.station).phi / basis.phi_half);
  const double to_h = beam.length / beam.thickness * station_ratio;

  const std::size_t n = s_grid.size();
  std::vector<AmplitudeSolution> sols(n);
  SsimSweep out;
  out.s_grid.assign(s_grid.begin(), s_grid.end());
  out.backbone.resize(n);

  const auto solve_at = [&](std::size_t i) {
    const rom::RomCoefficients c = coefficients(beam, slider, basis, s_grid[i], opt.linear);
    sols[i] = solve_amplitudes(c, exc);
    for (auto& p : sols[i].points) p.w_station_over_h = p.amplitude * to_h;
    if (c.kappa > 0.0) out.backbone[i] = backbone_amplitude(c, exc.frequency_ratio);
  };
  const long ln = static_cast<long>(n);
  if (opt.execution == Execution::parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < ln; ++i) {
      try {
        solve_at(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(ssim_sweep_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (long i = 0; i < ln; ++i) solve_at(static_cast<std::size_t>(i));
  }

  // Connection pass: open[j] is the branch index carrying root j of the previous point.
  std::vector<int> open;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pts = sols[i].points;
    std::vector<int> next_open(pts.size(), -1);
    double turning = std::numeric_limits<double>::quiet_NaN();
    if (i > 0) {
      const auto& prev = sols[i - 1].points;
      std::vector<int> map(prev.size(), -1);
      if (prev.size() == pts.size()) {
        std::iota(map.begin(), map.end(), 0);
      } else {
        map = nearest_assignment(prev, pts);
        double lo = s_grid[i - 1];
        double hi = s_grid[i];
        const std::size_t count_lo = prev.size();
        while (hi - lo > opt.turning_tolerance) {
          const double mid = 0.5 * (lo + hi);
          if (root_count(beam, slider, exc, basis, mid, opt.linear) == count_lo) lo = mid; else hi = mid;
        }
        turning = 0.5 * (lo + hi);
        out.turning_points.push_back(turning);
      }
      for (std::size_t j = 0; j < prev.size(); ++j) {
        const int b = open[j];
        if (map[j] >= 0) {
          next_open[static_cast<std::size_t>(map[j])] = b;
        } else {
          out.branches[static_cast<std::size_t>(b)].turning_points.push_back(turning);
        }
      }
    }
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (next_open[j] < 0) {
        next_open[j] = static_cast<int>(out.branches.size());
        out.branches.emplace_back();
        if (i > 0) out.branches.back().turning_points.push_back(turning);
      }
      out.branches[static_cast<std::size_t>(next_open[j])].points.push_back(pts[j]);
    }
    open = std::move(next_open);
  }

  for (const auto& b : out.branches) {
    const bool born_inside = b.points.front().s > s_grid.front();
    const bool dies_inside = b.points.back().s < s_grid.back();
    const bool has_low = std::any_of(b.points.begin(), b.points.end(),
                                     [](const SsimPoint& p) { return p.label == BranchLabel::low; });
    if (born_inside && dies_inside && has_low) out.isolated_bubble = true;
  }

  int last_sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : sols[i].points) {
      if (p.label != BranchLabel::high) continue;
      const double bb = out.backbone[i].value_or(0.0);
      const int sign = p.amplitude >= bb ? 1 : -1;
      if (last_sign != 0 && sign != last_sign) ++out.high_backbone_crossings;
      last_sign = sign;
    }
  }
  return out;
}

}  // namespace slidelab::ssim
