#pragma once

// Non-smooth time stepping of the beam (n clamped-clamped modes with axial
// stretch) and the rigid slider with four unilateral frictional contacts.
//
// Contact numbering: P1 upper-left, P2 lower-left, P3 lower-right, P4 upper-right.
// Generalised coordinates are taken relative to the moving base:
//   z = [q_1..q_n, x_C, y_C, beta],  w(xi)/L = c sum_k phi_k(xi) q_k,
// with C the slider's centre of mass and c = 1/phi_1(1/2).

#include "slidelab/beam_rom.hpp"
#include "slidelab/ssim.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace slidelab::contact {

inline constexpr int kMaxModes = 8;
using ModalVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxModes, 1>;
using GenVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxModes + 3, 1>;

enum class ContactState : std::uint8_t { open = 0, stick = 1, slip_left = 2, slip_right = 3 };
enum class SliderMode { pcs, fs };

inline constexpr std::array<int, 4> kZetaZ{+1, -1, -1, +1};
inline constexpr std::array<int, 4> kZetaX{-1, -1, +1, +1};

/// Mode shapes and slopes tabulated on a uniform grid, cubic Hermite in between.
class ModeTable {
 public:
  ModeTable() = default;
  ModeTable(const std::vector<double>& lambdas, int intervals);
  int n_modes() const { return n_modes_; }
  void eval(double xi, double* phi, double* dphi) const;

 private:
  int n_modes_ = 0;
  int intervals_ = 0;
  double h_ = 0.0;
  // per node, per mode: phi, dphi, ddphi
  std::vector<double> data_;
};

struct Model {
  rom::BeamParameters beam;
  rom::SliderParameters slider;
  rom::ModalModel modal;
  ModeTable table;
  double gravity = 9.81;        // m/s^2, acts on beam and slider
  bool contacts = true;
  bool linear = false;          // drop the stretching term
  bool glued = false;           // slider rigidly fixed at s_prescribed, no contacts
  double modal_mass = 0.0;      // rho A L^3 c^2

  static Model build(const rom::BeamParameters& beam, const rom::SliderParameters& slider,
                     int n_modes, double gravity = 9.81);
};

struct SystemState {
  ModalVector q;       // modal coordinates
  ModalVector q_tau;   // dq/dtau, tau = omega t
  double s = 0.5;      // x_Q / L
  double y = 0.0;      // y_Q relative to the base [m]
  double beta = 0.0;   // [rad]
  double s_dot = 0.0;  // [1/s]
  double y_dot = 0.0;  // [m/s]
  double beta_dot = 0.0;
  double t = 0.0;      // [s]
};

struct ContactFrame {
  std::array<double, 4> gap{};                 // [m]
  std::array<double, 4> normal_impulse{};      // [N s]
  std::array<double, 4> tangential_impulse{};  // [N s]
  std::array<ContactState, 4> state{};
  std::uint8_t diagonal = 0;  // bit 0: P1+P3 closed in one step, bit 1: P2+P4
};

struct Kinematics {
  std::array<double, 4> p{};                   // contact abscissa xi on the beam
  std::array<double, 4> gap{};                 // [m]
  std::array<double, 4> normal_velocity{};     // [m/s], positive = opening
  std::array<double, 4> tangential_velocity{}; // [m/s], slider relative to beam
  std::array<double, 4> slope{};               // w_x at p
};

struct SimOptions {
  SliderMode mode = SliderMode::pcs;
  double s_prescribed = 0.5;      // PCS contact abscissa and glued position
  double dt = 0.0;                // 0: T_exc / 2000
  double duration = 1.0;          // [s]
  int stride = 1;
  double station = 4.0 / 7.0;
  bool station_total = true;      // station channel includes the base displacement
  double activation_tol = 1e-9;   // [m], on min(gap, predicted gap)
  double impulse_tol = 1e-11;     // [N s]
  double pgs_tol = 1e-12;         // [N s]
  int max_iter = 200;
  int max_halvings = 6;
  bool record = true;
};

struct Sample {
  SystemState state;
  ContactFrame frame;       // impulses summed, gaps minimised over the stride
  double w_station = 0.0;   // [m], per SimOptions::station_total
  double w_elastic_station = 0.0;
  double w_center = 0.0;    // elastic w(1/2) [m]
  double base = 0.0;        // base displacement [m]
  double beta_rel = 0.0;    // beta - atan(w_x(s))
  double ds_per_period = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  int stride = 1;
  double dt = 0.0;
  double excitation_period = 0.0;
  SliderMode mode = SliderMode::pcs;
  std::uint64_t parameters_hash = 0;
  SystemState final_state;
  std::int64_t steps = 0;
  std::int64_t halvings = 0;
};

/// Excitation in physical units: w0(t) = w0_hat cos(Omega t).
struct Drive {
  double amplitude = 0.0;  // w0_hat [m]
  double frequency = 0.0;  // Omega [rad/s]
  double base(double t) const;
  double acceleration(double t) const;
  double period() const;
};
Drive make_drive(const Model& model, const ssim::ExcitationParameters& exc);

Kinematics contact_kinematics(const Model& model, const SystemState& state, double s_kin);

/// One Moreau midpoint step (with the halving rule on solver failure).
std::pair<SystemState, ContactFrame> step(const SystemState& state, double dt, SliderMode mode,
                                          double s_prescribed, const Model& model,
                                          const Drive& drive, const SimOptions& opt = {});

Trajectory simulate(const Model& model, const ssim::ExcitationParameters& exc,
                    const SystemState& initial, const SimOptions& opt);

/// Beam at rest, slider centred on the neutral axis and level.
SystemState centered_state(const Model& model, double s);
/// As centered_state, slider lowered onto the upper contacts.
SystemState resting_state(const Model& model, double s);
/// Single-mode harmonic-balance point as initial condition (q1 = q_hat cos theta).
SystemState branch_state(const Model& model, double s, double frequency_ratio, double q_hat,
                         double theta);

/// Kinetic + elastic + gravitational energy, base at rest [J].
double mechanical_energy(const Model& model, const SystemState& state);

double beam_displacement(const Model& model, const SystemState& state, double xi);  // [m]
double beam_slope(const Model& model, const SystemState& state, double xi);

// ---------------------------------------------------------------------------

enum class SweepDirection { forward, backward };

struct PcsPoint {
  double s = 0.0;
  double amplitude = 0.0;      // envelope mean of q1-equivalent w(1/2)/L
  double amplitude_station = 0.0;  // envelope mean at the station [m]
  double simulated = 0.0;      // [s]
  bool steady = false;
};

struct PcsOptions {
  SimOptions sim;               // dt, tolerances; duration ignored
  double window = 1.0;          // [s]
  double steady_rel = 0.01;
  double max_time = 10.0;       // [s] per grid point
  int stride = 10;
  ssim::Execution execution = ssim::Execution::parallel;  // forward/backward concurrently
};

std::vector<PcsPoint> pcs_sweep(const Model& model, const ssim::ExcitationParameters& exc,
                                std::span<const double> s_grid, SweepDirection direction,
                                const PcsOptions& opt);

struct PcsPair {
  std::vector<PcsPoint> forward, backward;
};
PcsPair pcs_sweep_both(const Model& model, const ssim::ExcitationParameters& exc,
                       std::span<const double> s_grid, const PcsOptions& opt);

}  // namespace slidelab::contact
