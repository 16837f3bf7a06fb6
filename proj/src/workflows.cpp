#include "slidelab/workflows.hpp"

#include "slidelab/errors.hpp"
#include "slidelab/io.hpp"
#include "slidelab/locomotion.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace slidelab::workflows {

namespace fs = std::filesystem;

namespace {

Json header(const RunConfig& cfg, std::string_view workflow) {
  Json j;
  j["workflow"] = workflow;
  j["config_hash"] = io::hex_hash(cfg.hash);
  j["config"] = cfg.resolved;
  return j;
}

Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

double trimmed_cv(const std::vector<double>& x, double trim) {
  const auto n = x.size();
  const auto skip = static_cast<std::size_t>(trim * static_cast<double>(n));
  if (n < 2 * skip + 2) return 0.0;
  double sum = 0.0, sq = 0.0;
  const auto m = static_cast<double>(n - 2 * skip);
  for (std::size_t i = skip; i < n - skip; ++i) sum += x[i];
  const double mean = sum / m;
  for (std::size_t i = skip; i < n - skip; ++i) sq += (x[i] - mean) * (x[i] - mean);
  return mean > 0.0 ? std::sqrt(sq / m) / mean : 0.0;
}

// 0 open, 1 stick, 2 slip_left, 3 slip_right
std::int64_t state_code(contact::ContactState s) { return static_cast<std::int64_t>(s); }

}  // namespace

// --- ssim ------------------------------------------------------------------

SsimResult run_ssim(const RunConfig& cfg) {
  const auto grid = ssim::uniform_grid(cfg.ssim.s_min, cfg.ssim.s_max, cfg.ssim.points);
  ssim::SweepOptions opt;
  opt.station = cfg.sim.station;
  opt.turning_tolerance = cfg.ssim.turning_tolerance;
  opt.linear = cfg.sim.linear;
  opt.execution = cfg.ssim.parallel ? ssim::Execution::parallel : ssim::Execution::serial;
  SsimResult r;
  r.sweep = ssim::sweep_ssim(cfg.beam, cfg.slider, cfg.excitation, grid, opt);

  Json j = header(cfg, "ssim");
  j["grid_points"] = grid.size();
  j["branches"] = r.sweep.branches.size();
  j["turning_points"] = r.sweep.turning_points;
  j["isolated_bubble"] = r.sweep.isolated_bubble;
  j["high_backbone_crossings"] = r.sweep.high_backbone_crossings;
  Json branches = Json::array();
  for (std::size_t b = 0; b < r.sweep.branches.size(); ++b) {
    const auto& br = r.sweep.branches[b];
    Json e;
    e["id"] = b;
    e["s_first"] = br.points.front().s;
    e["s_last"] = br.points.back().s;
    e["points"] = br.points.size();
    e["turning_points"] = br.turning_points;
    double qmax = 0.0;
    for (const auto& p : br.points) qmax = std::max(qmax, p.amplitude);
    e["q_hat_max"] = qmax;
    branches.push_back(e);
  }
  j["branch_list"] = branches;
  r.summary = j;
  return r;
}

void write_ssim(const SsimResult& r, const fs::path& dir) {
  io::prepare_output_dir(dir);
  io::CsvWriter csv(dir / "branches.csv", {"branch_id", "s", "q_hat", "theta_rad", "stability",
                                           "branch_label", "w_hat_over_h_at_station"});
  for (std::size_t b = 0; b < r.sweep.branches.size(); ++b) {
    for (const auto& p : r.sweep.branches[b].points) {
      csv.row({static_cast<std::int64_t>(b), p.s, p.amplitude, p.phase,
               ssim::to_string(p.stability), ssim::to_string(p.label), p.w_station_over_h});
    }
  }
  io::CsvWriter bb(dir / "backbone.csv", {"s", "q_hat_backbone"});
  for (std::size_t i = 0; i < r.sweep.s_grid.size(); ++i) {
    const auto& v = r.sweep.backbone[i];
    bb.row({r.sweep.s_grid[i], v ? *v : std::nan("")});
  }
  io::write_json(dir / "summary.json", r.summary);
}

// --- simulate --------------------------------------------------------------

SimulationAnalysis analyze(const contact::Trajectory& tr, const RunConfig& cfg, double t_from) {
  SimulationAnalysis a;
  a.t_from = t_from;
  const double L = cfg.beam.length;
  const double T = tr.excitation_period;
  const double dts = tr.dt * tr.stride;
  std::vector<double> x, wc;
  double t0 = 0.0;
  for (const auto& s : tr.samples) {
    if (s.state.t < t_from) continue;
    if (x.empty()) t0 = s.state.t;
    x.push_back(s.w_station);
    wc.push_back(s.w_center / L);
  }
  a.pitch_limit = loco::pitch_limit(cfg.slider.contact_spacing, cfg.slider.gap,
                                    cfg.beam.thickness);
  a.ds_pitch = loco::pitch_transport(cfg.slider.contact_spacing, cfg.slider.gap,
                                     cfg.beam.thickness, L).exact;
  if (x.size() < 16) throw DomainError("analysis needs at least 16 samples after the transient");

  const double window = std::min(cfg.sim.envelope_window, dts * static_cast<double>(x.size()));
  a.envelope = signal::envelope(x, dts, window, t0);
  a.envelope_mean = a.envelope.mean();
  a.elastic_center_mean = signal::envelope(wc, dts, window, t0).mean();
  // Ripple below one excitation period is removed before measuring fluctuation.
  const auto fine = signal::envelope(x, dts, std::max(T, dts), t0);
  a.envelope_fluctuation = trimmed_cv(fine.amplitude, 0.05);

  const double f_exc = 1.0 / T;
  if (x.size() >= (1u << 14)) {
    a.peaks = signal::spectrum(x, dts, 0.02);
    for (const auto& p : a.peaks) {
      const double r = p.frequency / f_exc;
      if (std::abs(r - 1.0) > 0.02 && r > 0.5 && r < 1.5) {
        a.side_peak = r;
        a.peak_separation = 1.0 - r;
        break;
      }
    }
    std::vector<double> env = fine.instantaneous;
    const double mean = std::accumulate(env.begin(), env.end(), 0.0) / static_cast<double>(env.size());
    for (auto& v : env) v -= mean;
    const double f_min = 2.0 / (dts * static_cast<double>(env.size()));
    for (const auto& p : signal::spectrum(env, dts, 0.02)) {
      if (p.frequency > f_min && p.frequency < 0.5 * f_exc) {
        a.modulation_periods = f_exc / p.frequency;
        break;
      }
    }
  }

  signal::ClassifyOptions co;
  co.impulse_tol = cfg.sim.impulse_tol;
  co.pitch_limit = a.pitch_limit;
  co.t_from = t_from;
  a.contacts = signal::classify_contacts(tr, co);
  a.transport = signal::transport_per_period(tr, t_from);
  a.phase = signal::phase_relation(tr, t_from);
  return a;
}

namespace {

Json analysis_json(const SimulationAnalysis& a) {
  Json j;
  j["t_from_s"] = a.t_from;
  j["envelope_mean_m"] = a.envelope_mean;
  j["envelope_fluctuation"] = a.envelope_fluctuation;
  j["elastic_center_amplitude"] = a.elastic_center_mean;
  Json peaks = Json::array();
  for (std::size_t i = 0; i < a.peaks.size() && i < 8; ++i) {
    peaks.push_back({{"frequency_hz", a.peaks[i].frequency}, {"amplitude_m", a.peaks[i].amplitude}});
  }
  j["spectral_peaks"] = peaks;
  j["side_peak_over_excitation"] = optional_json(a.side_peak);
  j["peak_separation"] = optional_json(a.peak_separation);
  j["modulation_periods"] = optional_json(a.modulation_periods);
  Json tf;
  for (int l = 0; l < signal::kEpisodeLabels; ++l) {
    tf[std::string(signal::to_string(static_cast<signal::EpisodeLabel>(l)))] =
        a.contacts.stats.time_fraction[static_cast<std::size_t>(l)];
  }
  j["episode_time_fraction"] = tf;
  j["episodes"] = a.contacts.episodes.size();
  j["pitch_limit_rad"] = a.pitch_limit;
  j["pitch_limit_hits"] = a.contacts.stats.pitch_hits;
  j["pitch_limit_hits_per_period"] = a.contacts.stats.hits_per_period;
  j["stick_fraction"] = a.contacts.stats.stick_fraction;
  j["slip_left_fraction"] = a.contacts.stats.slip_left_fraction;
  j["slip_right_fraction"] = a.contacts.stats.slip_right_fraction;
  j["periods"] = a.transport.ds.size();
  j["mean_ds"] = a.transport.mean;
  j["total_ds"] = a.transport.total;
  j["ds_pitch"] = a.ds_pitch;
  j["mean_ds_over_ds_pitch"] = a.ds_pitch > 0.0 ? a.transport.mean / a.ds_pitch : 0.0;
  j["phase_elastic_vs_base_rad"] = a.phase;
  return j;
}

}  // namespace

SimulateResult run_simulate(const RunConfig& cfg) {
  const contact::Model model = config::build_model(cfg, cfg.sim.n_modes);
  const contact::SystemState init =
      config::initial_state(cfg, model, cfg.sim.s, cfg.sim.initial);
  SimulateResult r;
  r.trajectory = contact::simulate(model, cfg.excitation, init, config::sim_options(cfg));
  r.analysis = analyze(r.trajectory, cfg, cfg.sim.transient);
  Json j = header(cfg, "simulate");
  j["parameters_hash"] = io::hex_hash(r.trajectory.parameters_hash);
  j["mode"] = cfg.sim.mode;
  j["n_modes"] = cfg.sim.n_modes;
  j["initial"] = config::to_string(cfg.sim.initial);
  j["dt_s"] = r.trajectory.dt;
  j["excitation_period_s"] = r.trajectory.excitation_period;
  j["steps"] = r.trajectory.steps;
  j["halvings"] = r.trajectory.halvings;
  j["samples"] = r.trajectory.samples.size();
  const auto& fs = r.trajectory.final_state;
  j["final_state"] = {{"s", fs.s}, {"y_m", fs.y}, {"beta_rad", fs.beta}, {"t_s", fs.t},
                      {"q", std::vector<double>(fs.q.data(), fs.q.data() + fs.q.size())}};
  j["analysis"] = analysis_json(r.analysis);
  r.summary = j;
  return r;
}

void write_simulate(const SimulateResult& r, const RunConfig& cfg, const fs::path& dir) {
  io::prepare_output_dir(dir);
  const double h = cfg.beam.thickness;
  const double L = cfg.beam.length;
  {
    io::CsvWriter csv(dir / "trajectory.csv",
                      {"t_s", "w_station_over_h", "beta_rad", "beta_rel_rad", "s", "ds_per_period",
                       "g1_m", "g2_m", "g3_m", "g4_m", "state1", "state2", "state3", "state4",
                       "w_center_over_L"});
    for (const auto& s : r.trajectory.samples) {
      const auto& f = s.frame;
      csv.row({s.state.t, s.w_station / h, s.state.beta, s.beta_rel, s.state.s, s.ds_per_period,
               f.gap[0], f.gap[1], f.gap[2], f.gap[3], state_code(f.state[0]),
               state_code(f.state[1]), state_code(f.state[2]), state_code(f.state[3]),
               s.w_center / L});
    }
  }
  {
    io::CsvWriter csv(dir / "envelope.csv", {"t_s", "magnitude_m", "envelope_m"});
    const auto& e = r.analysis.envelope;
    for (std::size_t i = 0; i < e.t.size(); ++i) {
      csv.row({e.t[i], e.instantaneous[i], e.amplitude[i]});
    }
  }
  {
    io::CsvWriter csv(dir / "spectrum_peaks.csv",
                      {"frequency_hz", "frequency_over_excitation", "amplitude_m"});
    const double f_exc = 1.0 / r.trajectory.excitation_period;
    for (const auto& p : r.analysis.peaks) csv.row({p.frequency, p.frequency / f_exc, p.amplitude});
  }
  {
    io::CsvWriter csv(dir / "episodes.csv", {"start_s", "end_s", "label", "pitch_limit_hit",
                                             "slide1", "slide2", "slide3", "slide4"});
    for (const auto& e : r.analysis.contacts.episodes) {
      csv.row({e.start, e.end, signal::to_string(e.label),
               static_cast<std::int64_t>(e.pitch_limit_hit), e.sliding_direction[0],
               e.sliding_direction[1], e.sliding_direction[2], e.sliding_direction[3]});
    }
  }
  {
    io::CsvWriter csv(dir / "transport.csv", {"t_s", "ds", "ds_over_ds_pitch"});
    const auto& tr = r.analysis.transport;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      csv.row({tr.t[i], tr.ds[i], tr.ds[i] / r.analysis.ds_pitch});
    }
  }
  io::write_json(dir / "summary.json", r.summary);
}

// --- pcs-sweep -------------------------------------------------------------

namespace {

std::vector<PcsComparison> compare(const std::vector<contact::PcsPoint>& pts,
                                   const RunConfig& cfg, const rom::RomBasis& basis) {
  std::vector<PcsComparison> out;
  for (const auto& p : pts) {
    PcsComparison c;
    c.s = p.s;
    c.simulated = p.amplitude;
    const auto sol = ssim::solve_amplitudes(rom::rom_coefficients(cfg.beam, cfg.slider, p.s, basis),
                                            cfg.excitation);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& root : sol.points) {
      if (root.stability != ssim::Stability::stable || !(root.amplitude > 0.0)) continue;
      const double d = std::abs(std::log(p.amplitude / root.amplitude));
      if (d < best) {
        best = d;
        c.analytical = root.amplitude;
      }
    }
    if (c.analytical) c.relative_error = std::abs(p.amplitude - *c.analytical) / *c.analytical;
    out.push_back(c);
  }
  return out;
}

Json sweep_json(const std::vector<contact::PcsPoint>& pts, const std::vector<PcsComparison>& cmp) {
  Json a = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a.push_back({{"s", pts[i].s},
                 {"q_hat", pts[i].amplitude},
                 {"analytical", optional_json(cmp[i].analytical)},
                 {"relative_error", optional_json(cmp[i].relative_error)},
                 {"simulated_s", pts[i].simulated},
                 {"steady", pts[i].steady}});
  }
  return a;
}

}  // namespace

PcsResult run_pcs(const RunConfig& cfg) {
  PcsResult r;
  r.grid = ssim::uniform_grid(cfg.pcs.s_min, cfg.pcs.s_max, cfg.pcs.points);
  const contact::Model model = config::build_model(cfg, cfg.sim.n_modes);
  contact::PcsOptions opt;
  opt.sim = config::sim_options(cfg);
  opt.window = cfg.pcs.window;
  opt.steady_rel = cfg.pcs.steady_rel;
  opt.max_time = cfg.pcs.max_time;
  opt.stride = cfg.pcs.stride;
  opt.execution = cfg.pcs.parallel ? ssim::Execution::parallel : ssim::Execution::serial;
  r.sweeps = contact::pcs_sweep_both(model, cfg.excitation, r.grid, opt);

  const rom::RomBasis basis = rom::rom_basis();
  r.forward = compare(r.sweeps.forward, cfg, basis);
  r.backward = compare(r.sweeps.backward, cfg, basis);

  const auto& bw = r.sweeps.backward;
  // Largest step-to-step amplitude change by more than a factor 2, either way.
  double worst = std::log(2.0);
  for (std::size_t i = 1; i < bw.size(); ++i) {
    if (!(bw[i - 1].amplitude > 0.0 && bw[i].amplitude > 0.0)) continue;
    const double step = std::abs(std::log(bw[i].amplitude / bw[i - 1].amplitude));
    if (step > worst) {
      worst = step;
      r.backward_jump = 0.5 * (bw[i].s + bw[i - 1].s);
    }
  }
  ssim::SweepOptions so;
  so.station = cfg.sim.station;
  const auto fine = ssim::uniform_grid(cfg.pcs.s_min, cfg.pcs.s_max, 500);
  r.analytical_turning_points =
      ssim::sweep_ssim(cfg.beam, cfg.slider, cfg.excitation, fine, so).turning_points;

  Json j = header(cfg, "pcs-sweep");
  j["n_modes"] = cfg.sim.n_modes;
  j["forward"] = sweep_json(r.sweeps.forward, r.forward);
  j["backward"] = sweep_json(r.sweeps.backward, r.backward);
  j["backward_jump_s"] = optional_json(r.backward_jump);
  j["analytical_turning_points"] = r.analytical_turning_points;
  r.summary = j;
  return r;
}

void write_pcs(const PcsResult& r, const fs::path& dir) {
  io::prepare_output_dir(dir);
  const auto write_one = [&](const char* name, const std::vector<contact::PcsPoint>& pts,
                             const std::vector<PcsComparison>& cmp) {
    io::CsvWriter csv(dir / name, {"s", "q_hat", "w_hat_station_m", "simulated_s", "steady",
                                   "q_hat_analytical", "relative_error"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      csv.row({pts[i].s, pts[i].amplitude, pts[i].amplitude_station, pts[i].simulated,
               static_cast<std::int64_t>(pts[i].steady), cmp[i].analytical.value_or(std::nan("")),
               cmp[i].relative_error.value_or(std::nan(""))});
    }
  };
  write_one("pcs_forward.csv", r.sweeps.forward, r.forward);
  write_one("pcs_backward.csv", r.sweeps.backward, r.backward);
  io::write_json(dir / "summary.json", r.summary);
}

// --- locomotion-report -----------------------------------------------------

LocomotionResult run_locomotion(const RunConfig& cfg) {
  const auto& sl = cfg.slider;
  const auto& bm = cfg.beam;
  const double L = bm.length;
  Json j = header(cfg, "locomotion-report");

  const double beta = loco::pitch_limit(sl.contact_spacing, sl.gap, bm.thickness);
  const auto pt = loco::pitch_transport(sl.contact_spacing, sl.gap, bm.thickness, L);
  j["pitch_limit_rad"] = beta;
  j["ds_pitch_exact"] = pt.exact;
  j["ds_pitch_small_angle"] = pt.small_angle;

  Json pend = Json::array();
  for (int i = 1; i <= 4; ++i) {
    const auto g = loco::pendulum_geometry(sl, i);
    pend.push_back({{"contact", i},
                    {"zeta_z", g.zeta_z},
                    {"zeta_x", g.zeta_x},
                    {"length_over_L", g.length / L},
                    {"sigma_rad", g.angle},
                    {"half_sin_2sigma", 0.5 * std::sin(2.0 * g.angle)},
                    {"inertia_ratio", g.inertia_ratio}});
  }
  j["pendulum"] = pend;
  const auto lc = loco::lambda_coefficients(sl);
  j["lambda_upper"] = lc.upper;
  j["lambda_lower"] = lc.lower;

  const double clearance = sl.clearance(bm.thickness);
  Json thr = Json::array();
  for (double r : {1.0, 0.5, 0.0}) {
    const double w = ssim::modulation_threshold(r, clearance);
    thr.push_back({{"restitution", r}, {"w_min_over_g", w / clearance}, {"w_min_over_L", w / L}});
  }
  j["modulation_thresholds"] = thr;

  const auto c_half = rom::rom_coefficients(bm, sl, 0.5);
  const double hl = bm.thickness / L;
  j["frequency_ratio_slider_center"] = 1.0 / std::sqrt(1.0 + c_half.mu);
  j["stiffening_at_h"] = std::sqrt(1.0 + 0.75 * c_half.kappa * hl * hl);
  j["stiffening_at_2h"] = std::sqrt(1.0 + 0.75 * c_half.kappa * 4.0 * hl * hl);
  j["kappa"] = c_half.kappa;

  const double omega_exc = cfg.excitation.frequency_ratio * rom::modal_frequency(bm, c_half.lambda);
  Json cases = Json::array();
  for (const auto& c : cfg.locomotion.cases) {
    const auto slip = loco::slip_per_cycle(c.conditions, sl, L);
    const auto v = loco::stick_slip_predictor(sl, c.conditions, cfg.locomotion.stick_band);
    const auto in = loco::inactivity_check(cfg.excitation, L, omega_exc, c.phase,
                                           c.conditions.w_hat * L, cfg.sim.gravity,
                                           cfg.locomotion.marginal_band);
    cases.push_back({{"name", c.name},
                     {"s", c.conditions.s},
                     {"ds_slope", slip.slope},
                     {"ds_rock", slip.rock},
                     {"w_right_over_L", slip.w_right},
                     {"w_left_over_L", slip.w_left},
                     {"slope_verdict", loco::to_string(v.slope)},
                     {"rocking_verdict", loco::to_string(v.rocking)},
                     {"sliding_windows", v.sliding_windows},
                     {"activity", loco::to_string(in.activity)},
                     {"peak_acceleration_over_g", in.total_acceleration / cfg.sim.gravity}});
  }
  j["cases"] = cases;
  return {j};
}

void write_locomotion(const LocomotionResult& r, const RunConfig& cfg, const fs::path& dir) {
  (void)cfg;
  io::prepare_output_dir(dir);
  {
    io::CsvWriter csv(dir / "pendulum.csv", {"contact", "zeta_z", "zeta_x", "length_over_L",
                                             "sigma_rad", "half_sin_2sigma", "inertia_ratio"});
    for (const auto& p : r.report["pendulum"]) {
      csv.row({p["contact"].get<std::int64_t>(), p["zeta_z"].get<std::int64_t>(),
               p["zeta_x"].get<std::int64_t>(), p["length_over_L"].get<double>(),
               p["sigma_rad"].get<double>(), p["half_sin_2sigma"].get<double>(),
               p["inertia_ratio"].get<double>()});
    }
  }
  {
    io::CsvWriter csv(dir / "slip_cases.csv", {"name", "s", "ds_slope", "ds_rock", "slope_verdict",
                                               "rocking_verdict", "activity"});
    for (const auto& c : r.report["cases"]) {
      const std::string name = c["name"].get<std::string>();
      const std::string sv = c["slope_verdict"].get<std::string>();
      const std::string rv = c["rocking_verdict"].get<std::string>();
      const std::string ac = c["activity"].get<std::string>();
      csv.row({std::string_view(name), c["s"].get<double>(), c["ds_slope"].get<double>(),
               c["ds_rock"].get<double>(), std::string_view(sv), std::string_view(rv),
               std::string_view(ac)});
    }
  }
  io::write_json(dir / "summary.json", r.report);
}

// --- signature-move --------------------------------------------------------

SignatureResult run_signature(const RunConfig& cfg) {
  const auto& sg = cfg.signature;
  contact::Model model = config::build_model(cfg, cfg.sim.n_modes);
  model.glued = false;
  contact::SimOptions opt = config::sim_options(cfg);
  opt.mode = contact::SliderMode::fs;
  opt.duration = sg.chunk;
  contact::SystemState state = config::initial_state(cfg, model, sg.s0, sg.initial);

  SignatureResult r;
  const double L = cfg.beam.length;
  const double outward = sg.s0 < 0.5 ? -1.0 : 1.0;
  const int decimate = std::max(1, sg.record_stride / opt.stride);
  const int window_chunks = static_cast<int>(std::lround(sg.stop_window / sg.chunk));
  double level0 = 0.0;
  double s_at_jump = 0.0;
  int jump_chunk = 0;
  r.s_min = sg.s0;
  const int n_chunks = static_cast<int>(std::floor(sg.max_time / sg.chunk + 1e-9));
  for (int k = 0; k < n_chunks; ++k) {
    const double s_begin = state.s;
    const contact::Trajectory tr = contact::simulate(model, cfg.excitation, state, opt);
    state = tr.final_state;
    std::vector<double> w;
    w.reserve(tr.samples.size());
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
      const auto& smp = tr.samples[i];
      w.push_back(smp.w_center / L);
      if (i % static_cast<std::size_t>(decimate) == 0) {
        r.t.push_back(smp.state.t);
        r.s.push_back(smp.state.s);
        r.w_center.push_back(smp.w_center / L);
      }
    }
    const double dts = tr.dt * tr.stride;
    SignatureChunk c;
    c.t_end = state.t;
    c.s = state.s;
    c.rate = (state.s - s_begin) / sg.chunk;
    c.envelope = signal::envelope(w, dts, std::min(sg.chunk, dts * static_cast<double>(w.size()))).mean();
    if (k == 0) level0 = c.envelope;
    const bool high = c.envelope > sg.jump_ratio * level0;
    r.s_min = outward < 0 ? std::min(r.s_min, state.s) : std::max(r.s_min, state.s);
    if (!r.jump) {
      if (outward * (state.s - sg.s0) > sg.stop_tol) r.outward_drift = true;
      if (high) {
        r.jump = true;
        r.jump_time = c.t_end;
        s_at_jump = state.s;
        jump_chunk = k;
      }
    } else if (!r.inward_drift && -outward * (state.s - s_at_jump) > sg.stop_tol) {
      r.inward_drift = true;
    }
    c.phase = r.jump ? static_cast<int>(Phase::inward_high) : static_cast<int>(Phase::outward_low);
    r.chunks.push_back(c);
    r.simulated = c.t_end - r.chunks.front().t_end + sg.chunk;

    const int n = static_cast<int>(r.chunks.size());
    if (r.inward_drift && high && n - jump_chunk > window_chunks) {
      // s must stay inside stop_tol over the whole window, not just at its ends.
      double lo = state.s;
      double hi = state.s;
      for (int i = n - 1 - window_chunks; i < n; ++i) {
        lo = std::min(lo, r.chunks[static_cast<std::size_t>(i)].s);
        hi = std::max(hi, r.chunks[static_cast<std::size_t>(i)].s);
      }
      if (hi - lo < sg.stop_tol) {
        r.stopped = true;
        r.stop_time = c.t_end;
        double sum = 0.0;
        for (int i = n - window_chunks; i < n; ++i) {
          sum += r.chunks[static_cast<std::size_t>(i)].s;
          r.chunks[static_cast<std::size_t>(i)].phase = static_cast<int>(Phase::stopped);
        }
        r.s_stop = sum / window_chunks;
        break;
      }
    }
  }
  r.complete = r.outward_drift && r.jump && r.inward_drift && r.stopped;

  Json j = header(cfg, "signature-move");
  j["n_modes"] = cfg.sim.n_modes;
  j["s0"] = sg.s0;
  j["simulated_s"] = r.simulated;
  j["complete"] = r.complete;
  j["partial"] = !r.complete;
  j["outward_drift"] = r.outward_drift;
  j["jump"] = r.jump;
  j["inward_drift"] = r.inward_drift;
  j["stopped"] = r.stopped;
  j["s_extreme_outward"] = r.s_min;
  j["jump_time_s"] = r.jump ? Json(r.jump_time) : Json(nullptr);
  j["stop_time_s"] = r.stopped ? Json(r.stop_time) : Json(nullptr);
  j["s_stop"] = r.stopped ? Json(r.s_stop) : Json(nullptr);
  j["s_final"] = r.chunks.empty() ? sg.s0 : r.chunks.back().s;
  j["envelope_first_chunk"] = level0;
  j["pitch_limit_rad"] = loco::pitch_limit(cfg.slider.contact_spacing, cfg.slider.gap,
                                           cfg.beam.thickness);
  j["ds_pitch"] = loco::pitch_transport(cfg.slider.contact_spacing, cfg.slider.gap,
                                        cfg.beam.thickness, L).exact;
  r.summary = j;
  return r;
}

void write_signature(const SignatureResult& r, const fs::path& dir) {
  io::prepare_output_dir(dir);
  {
    io::CsvWriter csv(dir / "signature.csv", {"t_s", "s", "w_center_over_L"});
    for (std::size_t i = 0; i < r.t.size(); ++i) csv.row({r.t[i], r.s[i], r.w_center[i]});
  }
  {
    io::CsvWriter csv(dir / "signature_chunks.csv",
                      {"t_end_s", "s", "ds_dt_per_s", "envelope_center_over_L", "phase"});
    for (const auto& c : r.chunks) {
      csv.row({c.t_end, c.s, c.rate, c.envelope, static_cast<std::int64_t>(c.phase)});
    }
  }
  io::write_json(dir / "summary.json", r.summary);
}

}  // namespace slidelab::workflows
