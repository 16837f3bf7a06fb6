#include "contact_step.hpp"

#include "slidelab/errors.hpp"
#include "slidelab/hash.hpp"

#include <fmt/format.h>

#include <cmath>

namespace slidelab::contact {

namespace {

std::uint64_t parameters_hash(const Model& model, const ssim::ExcitationParameters& exc,
                              const SimOptions& opt, double dt) {
  Fnv1a h;
  const auto& b = model.beam;
  const auto& s = model.slider;
  for (double v : {b.length, b.thickness, b.density, b.youngs_modulus, b.area, b.area_moment,
                   b.axial_clamping_stiffness, b.damping_ratio, b.modal_frequency.value_or(0.0),
                   s.mass, s.rotary_inertia, s.contact_spacing, s.gap, s.com_offset,
                   s.friction_coefficient, s.restitution, model.gravity, exc.base_amplitude,
                   exc.frequency_ratio, opt.s_prescribed, dt, opt.duration, opt.station}) {
    h.add(v);
  }
  h.add(static_cast<std::int64_t>(model.modal.n_modes));
  h.add(static_cast<std::int64_t>(opt.mode == SliderMode::fs));
  h.add(static_cast<std::int64_t>(model.contacts) * 4 + static_cast<std::int64_t>(model.linear) * 2 +
        static_cast<std::int64_t>(model.glued));
  return h.value();
}

double slider_s(const Model& model, const GenVector& z) {
  const int n = model.modal.n_modes;
  return (z[n] - model.slider.com_offset * std::sin(z[n + 2])) / model.beam.length;
}

}  // namespace

Trajectory simulate(const Model& model, const ssim::ExcitationParameters& exc,
                    const SystemState& initial, const SimOptions& opt) {
  if (!(opt.duration > 0.0)) throw DomainError("simulate: duration must be > 0");
  if (opt.stride < 1) throw DomainError("simulate: stride must be >= 1");
  const Drive drive = make_drive(model, exc);
  const double T = drive.period();
  const double dt = opt.dt > 0.0 ? opt.dt : T / 2000.0;
  const detail::Prepared prep(model, opt.s_prescribed);

  detail::Coords c = detail::to_coords(model, initial);
  const double t0 = initial.t;
  const auto steps = static_cast<std::int64_t>(std::llround(opt.duration / dt));

  Trajectory tr;
  tr.stride = opt.stride;
  tr.dt = dt;
  tr.excitation_period = T;
  tr.mode = opt.mode;
  tr.parameters_hash = parameters_hash(model, exc, opt, dt);
  if (opt.record) tr.samples.reserve(static_cast<std::size_t>(steps / opt.stride + 1));

  auto next_boundary = static_cast<std::int64_t>(std::floor(t0 / T)) + 1;
  double s_boundary = initial.s;
  double last_ds = 0.0;
  ContactFrame window = detail::empty_frame();

  for (std::int64_t k = 1; k <= steps; ++k) {
    ContactFrame f;
    try {
      detail::advance(prep, c, dt, opt.mode, opt.s_prescribed, drive, opt, f, 0, tr.halvings);
    } catch (const DomainError& e) {
      throw NumericalError(fmt::format("t = {} s: {}", c.t, e.what()));
    }
    c.t = t0 + static_cast<double>(k) * dt;
    detail::merge_frame(window, f);
    if (c.t >= static_cast<double>(next_boundary) * T) {
      const double s_now = slider_s(model, c.z);
      last_ds = s_now - s_boundary;
      s_boundary = s_now;
      ++next_boundary;
    }
    if (opt.record && k % opt.stride == 0) {
      Sample smp;
      smp.state = detail::to_state(model, c);
      smp.frame = window;
      smp.w_elastic_station = beam_displacement(model, smp.state, opt.station);
      smp.base = drive.base(c.t);
      smp.w_station = smp.w_elastic_station + (opt.station_total ? smp.base : 0.0);
      smp.w_center = beam_displacement(model, smp.state, 0.5);
      const double s_kin = opt.mode == SliderMode::fs && !model.glued ? smp.state.s
                                                                       : opt.s_prescribed;
      smp.beta_rel = smp.state.beta - std::atan(beam_slope(model, smp.state, s_kin));
      smp.ds_per_period = last_ds;
      tr.samples.push_back(smp);
      window = detail::empty_frame();
    }
  }
  tr.steps = steps;
  tr.final_state = detail::to_state(model, c);
  return tr;
}

}  // namespace slidelab::contact
