#include "slidelab/contact.hpp"
#include "slidelab/errors.hpp"
#include "slidelab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace slidelab::contact {

namespace {

double window_amplitude(const Trajectory& tr, double L) {
  std::vector<double> w;
  w.reserve(tr.samples.size());
  for (const auto& s : tr.samples) w.push_back(s.w_center / L);
  const double dt = tr.dt * tr.stride;
  return signal::envelope(w, dt, dt * static_cast<double>(w.size())).mean();
}

double window_station(const Trajectory& tr) {
  std::vector<double> w;
  w.reserve(tr.samples.size());
  for (const auto& s : tr.samples) w.push_back(s.w_station);
  const double dt = tr.dt * tr.stride;
  return signal::envelope(w, dt, dt * static_cast<double>(w.size())).mean();
}

}  // namespace

std::vector<PcsPoint> pcs_sweep(const Model& model, const ssim::ExcitationParameters& exc,
                                std::span<const double> s_grid, SweepDirection direction,
                                const PcsOptions& opt) {
  if (s_grid.empty()) throw DomainError("pcs_sweep: empty s grid");
  const bool increasing = s_grid.size() < 2 || s_grid[1] > s_grid[0];
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if ((s_grid[i] > s_grid[i - 1]) != increasing || s_grid[i] == s_grid[i - 1]) {
      throw DomainError("pcs_sweep: s grid must be strictly monotone");
    }
  }
  std::vector<double> grid(s_grid.begin(), s_grid.end());
  const bool want_increasing = direction == SweepDirection::forward;
  if (increasing != want_increasing) std::reverse(grid.begin(), grid.end());

  std::vector<PcsPoint> out;
  SystemState state = centered_state(model, grid.front());
  for (double s : grid) {
    SimOptions sim = opt.sim;
    sim.mode = SliderMode::pcs;
    sim.s_prescribed = s;
    sim.duration = opt.window;
    sim.stride = opt.stride;
    sim.record = true;
    PcsPoint pt;
    pt.s = s;
    double prev = -1.0;
    double elapsed = 0.0;
    while (elapsed < opt.max_time - 1e-9) {
      const Trajectory tr = simulate(model, exc, state, sim);
      state = tr.final_state;
      elapsed += opt.window;
      const double a = window_amplitude(tr, model.beam.length);
      pt.amplitude = a;
      pt.amplitude_station = window_station(tr);
      if (prev > 0.0 && std::abs(a - prev) <= opt.steady_rel * std::max(a, prev)) {
        pt.steady = true;
        break;
      }
      prev = a;
    }
    pt.simulated = elapsed;
    out.push_back(pt);
  }
  return out;
}

PcsPair pcs_sweep_both(const Model& model, const ssim::ExcitationParameters& exc,
                       std::span<const double> s_grid, const PcsOptions& opt) {
  PcsPair out;
  if (opt.execution == ssim::Execution::parallel) {
    // Exceptions must not cross the parallel region.
    std::exception_ptr err[2];
#pragma omp parallel sections
    {
#pragma omp section
      try {
        out.forward = pcs_sweep(model, exc, s_grid, SweepDirection::forward, opt);
      } catch (...) {
        err[0] = std::current_exception();
      }
#pragma omp section
      try {
        out.backward = pcs_sweep(model, exc, s_grid, SweepDirection::backward, opt);
      } catch (...) {
        err[1] = std::current_exception();
      }
    }
    for (auto& e : err) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    out.forward = pcs_sweep(model, exc, s_grid, SweepDirection::forward, opt);
    out.backward = pcs_sweep(model, exc, s_grid, SweepDirection::backward, opt);
  }
  return out;
}

}  // namespace slidelab::contact
