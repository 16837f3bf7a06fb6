#include "slidelab/config.hpp"

#include "slidelab/errors.hpp"
#include "slidelab/hash.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace slidelab::config {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

template <class T>
T get(const Json& sec, const char* key, const std::string& path) {
  const std::string where = join(path, key);
  if (!sec.contains(key)) throw ConfigError(fmt::format("missing key '{}'", where));
  const Json& v = sec.at(key);
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw ConfigError("");
      return x;
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw ConfigError("");
      return v.get<int>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("");
      return v.get<bool>();
    } else {
      if (!v.is_string()) throw ConfigError("");
      return v.get<std::string>();
    }
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("key '{}' has the wrong type ({})", where, v.dump()));
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

InitialCondition parse_initial(const std::string& s, const std::string& where) {
  if (s == "centered") return InitialCondition::centered;
  if (s == "resting") return InitialCondition::resting;
  if (s == "low") return InitialCondition::low;
  if (s == "high") return InitialCondition::high;
  throw ConfigError(fmt::format("{}: unknown initial condition '{}' "
                                "(centered, resting, low, high)", where, s));
}

const Json& section(const Json& doc, const char* name) {
  if (!doc.contains(name) || !doc.at(name).is_object()) {
    throw ConfigError(fmt::format("missing section '{}'", name));
  }
  return doc.at(name);
}

}  // namespace

std::string_view to_string(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::centered: return "centered";
    case InitialCondition::resting: return "resting";
    case InitialCondition::low: return "low";
    case InitialCondition::high: return "high";
  }
  return "?";
}

void merge(Json& base, const Json& patch, const std::string& path) {
  if (!patch.is_object()) {
    throw ConfigError(fmt::format("'{}' must be an object", path.empty() ? "<root>" : path));
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string where = join(path, it.key());
    if (!base.contains(it.key())) throw ConfigError(fmt::format("unknown key '{}'", where));
    Json& target = base[it.key()];
    if (target.is_object() && it.value().is_object()) {
      merge(target, it.value(), where);
    } else if (target.is_object() != it.value().is_object()) {
      throw ConfigError(fmt::format("key '{}' has the wrong shape", where));
    } else {
      target = it.value();
    }
  }
}

void apply_override(Json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(fmt::format("override '{}' is not key=value", assignment));
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  Json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while ((pos = rest.find('.')) != std::string::npos) {
    parts.push_back(rest.substr(0, pos));
    rest.erase(0, pos + 1);
  }
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw ConfigError(fmt::format("override key '{}' is malformed", key));
    Json wrap = Json::object();
    wrap[*it] = std::move(patch);
    patch = std::move(wrap);
  }
  merge(doc, patch);
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc = Json::parse(ss.str(), nullptr, false);
  if (doc.is_discarded()) throw ConfigError(fmt::format("'{}' is not valid JSON", path));
  return doc;
}

RunConfig parse(const Json& doc) {
  // Unknown keys: everything must already exist in the default document.
  Json check = default_document();
  merge(check, doc);

  RunConfig cfg;
  const Json& b = section(doc, "beam");
  std::optional<double> omega;
  if (!b.contains("modal_frequency_hz")) throw ConfigError("missing key 'beam.modal_frequency_hz'");
  if (!b.at("modal_frequency_hz").is_null()) {
    const double hz = get<double>(b, "modal_frequency_hz", "beam");
    require(hz > 0.0, "beam.modal_frequency_hz must be > 0 or null");
    omega = 2.0 * std::numbers::pi * hz;
  }
  const double length = get<double>(b, "length", "beam");
  const double thickness = get<double>(b, "thickness", "beam");
  const double density = get<double>(b, "density", "beam");
  const double mass = get<double>(b, "free_length_mass", "beam");
  require(length > 0.0 && thickness > 0.0 && density > 0.0 && mass > 0.0,
          "beam: length, thickness, density and free_length_mass must be > 0");
  cfg.beam = rom::BeamParameters::rectangular(
      length, thickness, density, get<double>(b, "youngs_modulus", "beam"), mass,
      get<double>(b, "axial_clamping_stiffness", "beam"), get<double>(b, "damping_ratio", "beam"),
      omega);
  cfg.beam.validate();

  const Json& sl = section(doc, "slider");
  cfg.slider.mass = get<double>(sl, "mass", "slider");
  cfg.slider.rotary_inertia = get<double>(sl, "rotary_inertia", "slider");
  cfg.slider.contact_spacing = get<double>(sl, "contact_spacing", "slider");
  cfg.slider.gap = get<double>(sl, "gap", "slider");
  cfg.slider.com_offset = get<double>(sl, "com_offset", "slider");
  cfg.slider.friction_coefficient = get<double>(sl, "friction_coefficient", "slider");
  cfg.slider.restitution = get<double>(sl, "restitution", "slider");
  cfg.slider.validate(cfg.beam);

  const Json& ex = section(doc, "excitation");
  cfg.excitation.base_amplitude = get<double>(ex, "base_amplitude", "excitation");
  cfg.excitation.frequency_ratio = get<double>(ex, "frequency_ratio", "excitation");
  cfg.excitation.validate();

  const Json& sm = section(doc, "sim");
  SimSection& s = cfg.sim;
  s.n_modes = get<int>(sm, "n_modes", "sim");
  s.mode = get<std::string>(sm, "mode", "sim");
  s.s = get<double>(sm, "s", "sim");
  s.initial = parse_initial(get<std::string>(sm, "initial", "sim"), "sim.initial");
  s.dt = get<double>(sm, "dt", "sim");
  s.duration = get<double>(sm, "duration", "sim");
  s.stride = get<int>(sm, "stride", "sim");
  s.station = get<double>(sm, "station", "sim");
  s.gravity = get<double>(sm, "gravity", "sim");
  s.linear = get<bool>(sm, "linear", "sim");
  s.contacts = get<bool>(sm, "contacts", "sim");
  s.transient = get<double>(sm, "transient", "sim");
  s.envelope_window = get<double>(sm, "envelope_window", "sim");
  s.activation_tol = get<double>(sm, "activation_tol", "sim");
  s.impulse_tol = get<double>(sm, "impulse_tol", "sim");
  s.pgs_tol = get<double>(sm, "pgs_tol", "sim");
  s.max_iter = get<int>(sm, "max_iter", "sim");
  s.max_halvings = get<int>(sm, "max_halvings", "sim");
  require(s.n_modes >= 1 && s.n_modes <= contact::kMaxModes,
          fmt::format("sim.n_modes must be in 1..{}", contact::kMaxModes));
  require(s.mode == "pcs" || s.mode == "fs" || s.mode == "glued",
          "sim.mode must be pcs, fs or glued");
  require(s.s > 0.0 && s.s < 1.0, "sim.s must be in (0, 1)");
  require(s.dt >= 0.0, "sim.dt must be >= 0");
  require(s.duration > 0.0, "sim.duration must be > 0");
  require(s.stride >= 1, "sim.stride must be >= 1");
  require(s.station >= 0.0 && s.station <= 1.0, "sim.station must be in [0, 1]");
  require(s.gravity >= 0.0, "sim.gravity must be >= 0");
  require(s.transient >= 0.0 && s.transient < s.duration,
          "sim.transient must be in [0, duration)");
  require(s.envelope_window > 0.0, "sim.envelope_window must be > 0");
  require(s.activation_tol >= 0.0 && s.impulse_tol >= 0.0 && s.pgs_tol > 0.0,
          "sim tolerances must be non-negative (pgs_tol > 0)");
  require(s.max_iter >= 1 && s.max_halvings >= 0, "sim.max_iter >= 1, sim.max_halvings >= 0");

  const Json& ss = section(doc, "ssim");
  cfg.ssim.s_min = get<double>(ss, "s_min", "ssim");
  cfg.ssim.s_max = get<double>(ss, "s_max", "ssim");
  cfg.ssim.points = get<int>(ss, "points", "ssim");
  cfg.ssim.turning_tolerance = get<double>(ss, "turning_tolerance", "ssim");
  cfg.ssim.parallel = get<bool>(ss, "parallel", "ssim");
  require(cfg.ssim.s_min >= 0.0 && cfg.ssim.s_max <= 1.0 && cfg.ssim.s_min < cfg.ssim.s_max,
          "ssim: need 0 <= s_min < s_max <= 1");
  require(cfg.ssim.points >= 2, "ssim.points must be >= 2");
  require(cfg.ssim.turning_tolerance > 0.0, "ssim.turning_tolerance must be > 0");

  const Json& pc = section(doc, "pcs");
  cfg.pcs.s_min = get<double>(pc, "s_min", "pcs");
  cfg.pcs.s_max = get<double>(pc, "s_max", "pcs");
  cfg.pcs.points = get<int>(pc, "points", "pcs");
  cfg.pcs.window = get<double>(pc, "window", "pcs");
  cfg.pcs.steady_rel = get<double>(pc, "steady_rel", "pcs");
  cfg.pcs.max_time = get<double>(pc, "max_time", "pcs");
  cfg.pcs.stride = get<int>(pc, "stride", "pcs");
  cfg.pcs.parallel = get<bool>(pc, "parallel", "pcs");
  require(cfg.pcs.s_min > 0.0 && cfg.pcs.s_max < 1.0 && cfg.pcs.s_min < cfg.pcs.s_max,
          "pcs: need 0 < s_min < s_max < 1");
  require(cfg.pcs.points >= 2, "pcs.points must be >= 2");
  require(cfg.pcs.window > 0.0 && cfg.pcs.max_time >= cfg.pcs.window,
          "pcs: need window > 0 and max_time >= window");
  require(cfg.pcs.steady_rel > 0.0 && cfg.pcs.stride >= 1, "pcs: steady_rel > 0, stride >= 1");

  const Json& sg = section(doc, "signature");
  cfg.signature.s0 = get<double>(sg, "s0", "signature");
  cfg.signature.initial = parse_initial(get<std::string>(sg, "initial", "signature"),
                                        "signature.initial");
  cfg.signature.max_time = get<double>(sg, "max_time", "signature");
  cfg.signature.chunk = get<double>(sg, "chunk", "signature");
  cfg.signature.jump_ratio = get<double>(sg, "jump_ratio", "signature");
  cfg.signature.stop_window = get<double>(sg, "stop_window", "signature");
  cfg.signature.stop_tol = get<double>(sg, "stop_tol", "signature");
  cfg.signature.record_stride = get<int>(sg, "record_stride", "signature");
  require(cfg.signature.s0 > 0.0 && cfg.signature.s0 < 1.0, "signature.s0 must be in (0, 1)");
  require(cfg.signature.chunk > 0.0 && cfg.signature.max_time >= cfg.signature.chunk,
          "signature: need chunk > 0 and max_time >= chunk");
  require(cfg.signature.jump_ratio > 1.0, "signature.jump_ratio must be > 1");
  require(cfg.signature.stop_window >= cfg.signature.chunk && cfg.signature.stop_tol > 0.0,
          "signature: need stop_window >= chunk and stop_tol > 0");
  require(cfg.signature.record_stride >= 1, "signature.record_stride must be >= 1");

  const Json& lc = section(doc, "locomotion");
  cfg.locomotion.stick_band = get<double>(lc, "stick_band", "locomotion");
  cfg.locomotion.marginal_band = get<double>(lc, "marginal_band", "locomotion");
  require(cfg.locomotion.stick_band >= 0.0 && cfg.locomotion.marginal_band >= 0.0,
          "locomotion bands must be >= 0");
  if (!lc.contains("cases") || !lc.at("cases").is_array()) {
    throw ConfigError("locomotion.cases must be an array");
  }
  static const char* kCaseKeys[] = {"name", "s", "w_hat", "w_xi", "w_xixi",
                                    "q_hat", "amplitude_ratio", "phase"};
  int idx = 0;
  for (const Json& c : lc.at("cases")) {
    const std::string where = fmt::format("locomotion.cases[{}]", idx++);
    if (!c.is_object()) throw ConfigError(fmt::format("{} must be an object", where));
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (std::find(std::begin(kCaseKeys), std::end(kCaseKeys), it.key()) == std::end(kCaseKeys)) {
        throw ConfigError(fmt::format("unknown key '{}.{}'", where, it.key()));
      }
    }
    LocomotionCase lcase;
    lcase.name = get<std::string>(c, "name", where);
    auto& k = lcase.conditions;
    k.s = get<double>(c, "s", where);
    k.w_hat = get<double>(c, "w_hat", where);
    k.w_xi = get<double>(c, "w_xi", where);
    k.w_xixi = get<double>(c, "w_xixi", where);
    k.q_hat = get<double>(c, "q_hat", where);
    k.amplitude_ratio = get<double>(c, "amplitude_ratio", where);
    const std::string ph = get<std::string>(c, "phase", where);
    require(ph == "in" || ph == "anti", fmt::format("{}.phase must be 'in' or 'anti'", where));
    lcase.phase = ph == "in" ? loco::BranchPhase::in_phase : loco::BranchPhase::anti_phase;
    require(k.s > 0.0 && k.s < 1.0 && k.w_hat >= 0.0 && k.q_hat >= 0.0,
            fmt::format("{}: need 0 < s < 1, w_hat >= 0, q_hat >= 0", where));
    cfg.locomotion.cases.push_back(lcase);
  }

  cfg.out = get<std::string>(doc, "out", "");
  require(!cfg.out.empty(), "out must not be empty");

  cfg.resolved = doc;
  Json hashed = doc;
  hashed.erase("out");
  Fnv1a h;
  h.add(std::string_view(hashed.dump()));
  cfg.hash = h.value();
  return cfg;
}

contact::Model build_model(const RunConfig& cfg, int n_modes) {
  contact::Model m = contact::Model::build(cfg.beam, cfg.slider, n_modes, cfg.sim.gravity);
  m.linear = cfg.sim.linear;
  m.contacts = cfg.sim.contacts;
  m.glued = cfg.sim.mode == "glued";
  return m;
}

contact::SliderMode slider_mode(const RunConfig& cfg) {
  return cfg.sim.mode == "fs" ? contact::SliderMode::fs : contact::SliderMode::pcs;
}

contact::SimOptions sim_options(const RunConfig& cfg) {
  contact::SimOptions o;
  o.mode = slider_mode(cfg);
  o.s_prescribed = cfg.sim.s;
  o.dt = cfg.sim.dt;
  o.duration = cfg.sim.duration;
  o.stride = cfg.sim.stride;
  o.station = cfg.sim.station;
  o.activation_tol = cfg.sim.activation_tol;
  o.impulse_tol = cfg.sim.impulse_tol;
  o.pgs_tol = cfg.sim.pgs_tol;
  o.max_iter = cfg.sim.max_iter;
  o.max_halvings = cfg.sim.max_halvings;
  return o;
}

contact::SystemState initial_state(const RunConfig& cfg, const contact::Model& model, double s,
                                   InitialCondition ic) {
  switch (ic) {
    case InitialCondition::centered: return contact::centered_state(model, s);
    case InitialCondition::resting: return contact::resting_state(model, s);
    case InitialCondition::low:
    case InitialCondition::high: {
      const auto coeffs = rom::rom_coefficients(cfg.beam, cfg.slider, s);
      const auto sol = ssim::solve_amplitudes(coeffs, cfg.excitation);
      if (sol.points.empty()) return contact::centered_state(model, s);
      const auto& p = ic == InitialCondition::low ? sol.points.front() : sol.points.back();
      return contact::branch_state(model, s, cfg.excitation.frequency_ratio, p.amplitude,
                                   p.phase);
    }
  }
  return contact::centered_state(model, s);
}

}  // namespace slidelab::config
