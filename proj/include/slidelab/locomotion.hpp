#pragma once

// Closed-form locomotion estimates: gravity inactivity, pitch limit and
// pitching transport, the sliding pendulum (full and reduced), slip per cycle
// and the stick/slip comparison. Time in this module is tau = Omega t.

#include "slidelab/beam_rom.hpp"
#include "slidelab/ssim.hpp"

#include <string_view>

namespace slidelab::loco {

inline constexpr double kGravity = 9.81;

enum class BranchPhase { in_phase, anti_phase };
enum class Activity { active, marginal, inactive };
std::string_view to_string(Activity a);

struct InactivityResult {
  Activity activity = Activity::active;
  double base_acceleration = 0.0;   // w0_hat Omega^2 [m/s^2]
  double total_acceleration = 0.0;  // |w0_tt +- w_tt| peak [m/s^2]
};

/// w_hat is the elastic amplitude at the slider [m]; omega_exc = Omega [rad/s].
/// Marginal when the total acceleration lies within marginal_band * g above g.
InactivityResult inactivity_check(const ssim::ExcitationParameters& exc, double beam_length,
                                  double omega_exc, BranchPhase phase, double w_hat,
                                  double gravity = kGravity, double marginal_band = 0.5);

/// Largest slider-beam relative rotation [rad].
double pitch_limit(double B, double R, double h);

struct PitchTransport {
  double exact = 0.0;
  double small_angle = 0.0;
};
PitchTransport pitch_transport(double B, double R, double h, double L);

struct PendulumGeometry {
  int index = 1;              // 1..4
  double length = 0.0;        // l [m]
  double angle = 0.0;         // sigma [rad]
  int zeta_z = 1;
  int zeta_x = -1;
  double inertia_ratio = 0.0; // m l^2 / (J_C + m l^2)
};
PendulumGeometry pendulum_geometry(const rom::SliderParameters& slider, int contact);

/// Beam kinematics at the hinge, all divided by L.
struct HingeKinematics {
  double w_xi = 0.0;
  double w_xixi = 0.0;
  double w_xitau = 0.0;
  double w_tautau_total = 0.0;  // (w0_tautau + w_tautau) / L
};

struct PendulumAccelerations {
  double psi_tt = 0.0;
  double p_tt = 0.0;
};
/// Solves the two coupled pendulum equations for (psi'', p'').
PendulumAccelerations pendulum_full_eom(const PendulumGeometry& g, double beam_length,
                                        const HingeKinematics& k, double psi, double psi_t,
                                        double p_t);

struct ReducedAccelerations {
  double psi_tt = 0.0;
  double p_slope = 0.0;
  double p_rock = 0.0;
};
/// w_tt and w_xi divided by L.
ReducedAccelerations reduced_accelerations(const PendulumGeometry& g, double beam_length,
                                           double w_tt, double w_xi);

struct CaseConditions {
  double s = 0.0;
  double w_hat = 0.0;      // w_hat(s)/L
  double w_xi = 0.0;       // w_hat_xi(s)/L
  double w_xixi = 0.0;     // w_hat_xixi(s)/L
  double q_hat = 0.0;
  double amplitude_ratio = 0.0;
};

struct LambdaCoefficients {
  double upper = 0.0;  // Lambda^o
  double lower = 0.0;  // Lambda^u
};
LambdaCoefficients lambda_coefficients(const rom::SliderParameters& slider);

struct SlipPerCycle {
  double slope = 0.0;
  double rock = 0.0;
  double w_right = 0.0;  // w_hat(s + B/2L)/L
  double w_left = 0.0;   // w_hat(s - B/2L)/L
};
SlipPerCycle slip_per_cycle(const CaseConditions& c, const rom::SliderParameters& slider,
                            double beam_length);

enum class Verdict { slides, marginal, sticks };
std::string_view to_string(Verdict v);

struct StickSlipVerdict {
  Verdict slope = Verdict::sticks;
  Verdict rocking = Verdict::sticks;
  bool sliding_windows = false;  // rocking reaches mu_f within the band
  double slope_ratio = 0.0;      // |w_xi/L|
  double rocking_ratio = 0.0;    // max(Lambda^o, Lambda^u)
};
StickSlipVerdict stick_slip_predictor(const rom::SliderParameters& slider,
                                      const CaseConditions& c, double band = 0.2);

}  // namespace slidelab::loco
