#include "slidelab/config.hpp"
#include "slidelab/errors.hpp"

#include <fmt/format.h>

namespace slidelab::config {

namespace {

Json locomotion_case(const char* name, double s, double w_hat, double w_xi, double w_xixi,
                     double q_hat, double magnification, const char* phase) {
  Json c;
  c["name"] = name;
  c["s"] = s;
  c["w_hat"] = w_hat;
  c["w_xi"] = w_xi;
  c["w_xixi"] = w_xixi;
  c["q_hat"] = q_hat;
  c["amplitude_ratio"] = magnification;
  c["phase"] = phase;
  return c;
}

}  // namespace

Json default_document() {
  Json d;
  d["beam"] = {
      {"length", 0.140},
      {"thickness", 0.001},
      {"density", 7683.0},
      {"youngs_modulus", 210e9},
      {"free_length_mass", 0.0151},
      {"axial_clamping_stiffness", 1.93e7},
      {"damping_ratio", 0.001},
      {"modal_frequency_hz", 260.0},
  };
  d["slider"] = {
      {"mass", 0.0462},
      {"rotary_inertia", 3.15e-6},
      {"contact_spacing", 0.010},
      {"gap", 1.05e-3},
      {"com_offset", 0.0041},
      {"friction_coefficient", 0.2},
      {"restitution", 0.5},
  };
  d["excitation"] = {{"base_amplitude", 1.65e-4}, {"frequency_ratio", 0.477}};
  const SimSection sim;
  d["sim"] = {
      {"n_modes", sim.n_modes},
      {"mode", sim.mode},
      {"s", sim.s},
      {"initial", to_string(sim.initial)},
      {"dt", sim.dt},
      {"duration", sim.duration},
      {"stride", sim.stride},
      {"station", sim.station},
      {"gravity", sim.gravity},
      {"linear", sim.linear},
      {"contacts", sim.contacts},
      {"transient", sim.transient},
      {"envelope_window", sim.envelope_window},
      {"activation_tol", sim.activation_tol},
      {"impulse_tol", sim.impulse_tol},
      {"pgs_tol", sim.pgs_tol},
      {"max_iter", sim.max_iter},
      {"max_halvings", sim.max_halvings},
  };
  const SsimSection ss;
  d["ssim"] = {
      {"s_min", ss.s_min},
      {"s_max", ss.s_max},
      {"points", ss.points},
      {"turning_tolerance", ss.turning_tolerance},
      {"parallel", ss.parallel},
  };
  const PcsSection pcs;
  d["pcs"] = {
      {"s_min", pcs.s_min},         {"s_max", pcs.s_max},
      {"points", pcs.points},       {"window", pcs.window},
      {"steady_rel", pcs.steady_rel}, {"max_time", pcs.max_time},
      {"stride", pcs.stride},       {"parallel", pcs.parallel},
  };
  const SignatureSection sig;
  d["signature"] = {
      {"s0", sig.s0},
      {"initial", to_string(sig.initial)},
      {"max_time", sig.max_time},
      {"chunk", sig.chunk},
      {"jump_ratio", sig.jump_ratio},
      {"stop_window", sig.stop_window},
      {"stop_tol", sig.stop_tol},
      {"record_stride", sig.record_stride},
  };
  Json cases = Json::array();
  cases.push_back(locomotion_case("case1", 0.27, 0.0011, 0.0053, 0.0086, 0.0018, 6.50, "anti"));
  cases.push_back(locomotion_case("case2", 0.27, 0.0050, 0.0246, 0.0400, 0.0083, 30.4, "in"));
  cases.push_back(locomotion_case("case3", 0.33, 0.0090, 0.0296, 0.1171, 0.0117, 54.2, "in"));
  d["locomotion"] = {{"cases", cases}, {"stick_band", 0.2}, {"marginal_band", 0.5}};
  d["out"] = "out";
  return d;
}

std::vector<std::string> preset_names() {
  return {"table-default", "case1", "case2", "case3", "zero-excitation"};
}

Json preset_document(std::string_view name) {
  Json d = default_document();
  if (name == "table-default") return d;
  if (name == "case1") {
    d["sim"]["s"] = 0.27;
    d["sim"]["initial"] = "low";
    return d;
  }
  if (name == "case2") {
    d["sim"]["s"] = 0.27;
    d["sim"]["initial"] = "high";
    return d;
  }
  if (name == "case3") {
    d["sim"]["s"] = 0.33;
    d["sim"]["initial"] = "high";
    return d;
  }
  if (name == "zero-excitation") {
    d["excitation"]["base_amplitude"] = 0.0;
    d["sim"]["initial"] = "resting";
    d["sim"]["duration"] = 2.0;
    d["sim"]["transient"] = 0.5;
    return d;
  }
  throw ConfigError(fmt::format("unknown preset '{}'", name));
}

}  // namespace slidelab::config
