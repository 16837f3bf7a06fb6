#include "slidelab/locomotion.hpp"

#include "slidelab/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slidelab::loco {

std::string_view to_string(Activity a) {
  switch (a) {
    case Activity::active: return "active";
    case Activity::marginal: return "marginal";
    case Activity::inactive: return "inactive";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::slides: return "slides";
    case Verdict::marginal: return "marginal";
    case Verdict::sticks: return "sticks";
  }
  return "?";
}

InactivityResult inactivity_check(const ssim::ExcitationParameters& exc, double beam_length,
                                  double omega_exc, BranchPhase phase, double w_hat,
                                  double gravity, double marginal_band) {
  if (!(omega_exc > 0.0) || !(w_hat >= 0.0)) {
    throw DomainError("inactivity_check: need Omega > 0 and w_hat >= 0");
  }
  InactivityResult r;
  const double w2 = omega_exc * omega_exc;
  r.base_acceleration = exc.base_amplitude * beam_length * w2;
  const double elastic = w_hat * w2;
  r.total_acceleration = phase == BranchPhase::in_phase
                             ? r.base_acceleration + elastic
                             : std::abs(r.base_acceleration - elastic);
  if (r.total_acceleration < gravity) {
    r.activity = Activity::inactive;
  } else if (r.total_acceleration < (1.0 + marginal_band) * gravity) {
    r.activity = Activity::marginal;
  } else {
    r.activity = Activity::active;
  }
  return r;
}

double pitch_limit(double B, double R, double h) {
  if (!(B > 0.0)) throw DomainError("pitch_limit: B must be > 0");
  if (!(R >= h)) {
    throw DomainError(fmt::format("pitch_limit: gap R = {} smaller than thickness h = {}", R, h));
  }
  return std::atan(R / B) - std::asin(h / std::hypot(R, B));
}

PitchTransport pitch_transport(double B, double R, double h, double L) {
  const double b = pitch_limit(B, R, h);
  return {2.0 / L * (R * std::sin(b) - B * (1.0 - std::cos(b))), 2.0 * R * b / L};
}

PendulumGeometry pendulum_geometry(const rom::SliderParameters& slider, int contact) {
  if (contact < 1 || contact > 4) {
    throw DomainError(fmt::format("pendulum_geometry: contact {} outside 1..4", contact));
  }
  static constexpr int zz[4] = {+1, -1, -1, +1};
  static constexpr int zx[4] = {-1, -1, +1, +1};
  PendulumGeometry g;
  g.index = contact;
  g.zeta_z = zz[contact - 1];
  g.zeta_x = zx[contact - 1];
  const double B = slider.contact_spacing;
  const double v = slider.com_offset + g.zeta_z * 0.5 * slider.gap;
  g.length = std::hypot(0.5 * B, v);
  g.angle = g.zeta_x * std::asin(std::min(1.0, B / (2.0 * g.length)));
  const double ml2 = slider.mass * g.length * g.length;
  g.inertia_ratio = ml2 / (slider.rotary_inertia + ml2);
  return g;
}

PendulumAccelerations pendulum_full_eom(const PendulumGeometry& g, double beam_length,
                                        const HingeKinematics& k, double psi, double psi_t,
                                        double p_t) {
  if (!(std::abs(psi) < 0.5 * std::numbers::pi)) {
    throw DomainError("pendulum_full_eom: |psi| must be < pi/2");
  }
  const double ir = g.inertia_ratio;
  const double lr = g.length / beam_length;
  const double sp = std::sin(psi);
  const double cp = std::cos(psi);
  const double wx = k.w_xi;
  const double drive = k.w_xixi * p_t * p_t + 2.0 * k.w_xitau * p_t + k.w_tautau_total;

  // a11 psi'' + a12 p'' = b1 ; a21 psi'' + a22 p'' = b2
  const double a11 = 1.0;
  const double a12 = ir / lr * (wx * sp - cp);
  const double b1 = -ir / lr * drive * sp;
  const double a21 = -lr * (cp - wx * sp);
  const double a22 = 1.0 + wx * wx;
  const double b2 = -lr * psi_t * psi_t * (sp + wx * cp) - drive * wx;
  const double det = a11 * a22 - a12 * a21;
  const double scale = std::max({std::abs(a11 * a22), std::abs(a12 * a21), 1e-300});
  if (std::abs(det) < 1e-12 * scale) {
    throw NumericalError("pendulum_full_eom: singular acceleration system (J_C = 0?)");
  }
  return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
}

ReducedAccelerations reduced_accelerations(const PendulumGeometry& g, double beam_length,
                                           double w_tt, double w_xi) {
  ReducedAccelerations r;
  const double s = std::sin(g.angle);
  r.psi_tt = -w_tt * (beam_length / g.length) * g.inertia_ratio * s;
  r.p_slope = -w_tt * w_xi;
  r.p_rock = -w_tt * g.inertia_ratio * 0.5 * std::sin(2.0 * g.angle);
  return r;
}

LambdaCoefficients lambda_coefficients(const rom::SliderParameters& slider) {
  const auto up = pendulum_geometry(slider, 1);
  const auto lo = pendulum_geometry(slider, 2);
  return {up.inertia_ratio * 0.5 * std::sin(2.0 * std::abs(up.angle)),
          lo.inertia_ratio * 0.5 * std::sin(2.0 * std::abs(lo.angle))};
}

SlipPerCycle slip_per_cycle(const CaseConditions& c, const rom::SliderParameters& slider,
                            double beam_length) {
  const double half = slider.contact_spacing / (2.0 * beam_length);
  if (!(c.s - half >= 0.0 && c.s + half <= 1.0)) {
    throw DomainError(fmt::format("slip_per_cycle: slider at s = {} overlaps a clamp", c.s));
  }
  const double lambda = rom::solve_frequency_equation(1);
  const double ph = rom::mode_shape(lambda, 0.5).phi;
  SlipPerCycle out;
  out.w_right = c.q_hat * rom::mode_shape(lambda, c.s + half).phi / ph;
  out.w_left = c.q_hat * rom::mode_shape(lambda, c.s - half).phi / ph;
  out.slope = std::numbers::pi * std::numbers::pi * c.w_hat * c.w_xi;
  const LambdaCoefficients lc = lambda_coefficients(slider);
  out.rock = -(out.w_right - out.w_left) * (lc.upper - lc.lower);
  return out;
}

StickSlipVerdict stick_slip_predictor(const rom::SliderParameters& slider,
                                      const CaseConditions& c, double band) {
  const double mu = slider.friction_coefficient;
  const LambdaCoefficients lc = lambda_coefficients(slider);
  StickSlipVerdict v;
  v.slope_ratio = std::abs(c.w_xi);
  v.rocking_ratio = std::max(lc.upper, lc.lower);
  const auto judge = [&](double ratio) {
    if (mu == 0.0) return Verdict::slides;
    if (std::abs(ratio - mu) <= band * mu) return Verdict::marginal;
    return ratio > mu ? Verdict::slides : Verdict::sticks;
  };
  v.slope = judge(v.slope_ratio);
  v.rocking = judge(v.rocking_ratio);
  v.sliding_windows = v.rocking != Verdict::sticks;
  return v;
}

}  // namespace slidelab::loco
