#pragma once

// Reduced-order model of a clamped-clamped Euler-Bernoulli beam carrying a
// rigid slider: eigenvalues, mode shapes and the coefficients of the
// single-mode Duffing-type modal equation
//
//   (1 + mu) q'' + 2 D q' + q + kappa q^3 = -gamma w0''/L,   q = w(1/2)/L,
//
// with ' = d/dtau, tau = omega t. The multi-mode Galerkin model with
// axial-stretch coupling lives in the same header.

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace slidelab::rom {

/// Physical beam inputs, SI units.
struct BeamParameters {
  double length = 0.0;                    // L [m]
  double thickness = 0.0;                 // h [m]
  double density = 0.0;                   // rho [kg/m^3]
  double youngs_modulus = 0.0;            // E [Pa]
  double area = 0.0;                      // A [m^2]
  double area_moment = 0.0;               // I [m^4]
  double axial_clamping_stiffness = 0.0;  // k_t [N/m]
  double damping_ratio = 0.0;             // D [-]
  std::optional<double> modal_frequency;  // measured omega [rad/s]; analytic if empty

  /// Rectangular section from the free-length mass: A = m_beam/(rho L), I = A h^2/12.
  static BeamParameters rectangular(double length, double thickness, double density,
                                    double youngs_modulus, double free_length_mass,
                                    double axial_clamping_stiffness, double damping_ratio,
                                    std::optional<double> modal_frequency = std::nullopt);

  double mass() const { return density * area * length; }

  /// Throws ConfigError on non-positive fields or I != A h^2/12.
  void validate() const;
};

/// Rigid slider inputs, SI units.
struct SliderParameters {
  double mass = 0.0;                  // m [kg]
  double rotary_inertia = 0.0;        // J_C about the centre of mass [kg m^2]
  double contact_spacing = 0.0;       // B [m]
  double gap = 0.0;                   // R [m]
  double com_offset = 0.0;            // d, geometric centre Q to centre of mass C [m]
  double friction_coefficient = 0.0;  // mu_f [-]
  double restitution = 0.0;           // r [-]

  /// J_Q = J_C + m d^2.
  double rotary_inertia_about_center() const {
    return rotary_inertia + mass * com_offset * com_offset;
  }
  double clearance(double beam_thickness) const { return 0.5 * (gap - beam_thickness); }

  /// Throws ConfigError unless R > h, 0 <= r <= 1, mu_f >= 0, B > 0.
  void validate(const BeamParameters& beam) const;
};

struct ModeShapeEval {
  double phi = 0.0;
  double dphi = 0.0;
  double ddphi = 0.0;
  double xi = 0.0;
};

struct RomCoefficients {
  double lambda = 0.0;
  double omega = 0.0;  // rad/s
  double mu = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double k_ax = 0.0;  // N/m
  double damping = 0.0;
  double slider_position = 0.0;
};

struct Quadratures {
  double integral_phi = 0.0;        // int_0^1 phi
  double integral_dphi_sq = 0.0;    // int_0^1 phi_xi^2
};

/// mode_index-th positive root of cos(l) cosh(l) = 1 (4.730 for the first).
double solve_frequency_equation(int mode_index);

/// Clamped-clamped mode shape and its first two derivatives at xi in [0, 1].
/// Evaluated in an overflow-free rearrangement that is exact in real arithmetic.
ModeShapeEval mode_shape(double lambda, double xi);

/// Adaptive Gauss-Kronrod integrals of phi and phi_xi^2 (abs. tol. 1e-10).
Quadratures integrate_quadratures(double lambda);

/// Stretching stiffness in series with the clamps: 1/k_ax = L/(EA) + 1/k_t.
double axial_stiffness(const BeamParameters& beam);

/// omega = sqrt(EI/(rho A L^4)) lambda^2, ignoring any override.
double analytic_modal_frequency(const BeamParameters& beam, double lambda);

/// omega override if present, else the analytic value.
double modal_frequency(const BeamParameters& beam, double lambda);

/// Mode-1 data shared by every slider position: lambda, phi(1/2), quadratures.
struct RomBasis {
  double lambda = 0.0;
  double phi_half = 0.0;
  Quadratures quad;
};
RomBasis rom_basis();

RomCoefficients rom_coefficients(const BeamParameters& beam, const SliderParameters& slider,
                                 double s);
/// Same result as above without recomputing lambda and the integrals.
RomCoefficients rom_coefficients(const BeamParameters& beam, const SliderParameters& slider,
                                 double s, const RomBasis& basis);

/// Galerkin model on the first n clamped-clamped modes with a common scale
/// c = 1/phi_1(1/2), so that w(xi)/L = c sum_k phi_k(xi) q_k and q_1 alone is
/// the normalised centre displacement. Coordinates are mass-normalised by
/// rho A L^3 c^2; time is tau = omega t with omega of mode 1.
struct ModalModel {
  int n_modes = 0;
  std::vector<double> lambda;           // lambda_k
  std::vector<double> frequency_ratio;  // omega_k / omega
  double shape_scale = 0.0;             // c
  Eigen::MatrixXd stretch_gram;         // G_ij = int phi_i' phi_j'
  double cubic_scale = 0.0;             // kappa / G_11^2
  std::vector<double> integral_phi;     // int phi_k
  double kappa = 0.0;
  double damping = 0.0;
  double omega = 0.0;
  double k_ax = 0.0;
  double mass_ratio = 0.0;              // m / (rho A L)
  double rotary_ratio = 0.0;            // J_Q / (rho A L^4), same convention as mu

  /// Modal mass matrix with the slider rigidly attached at s.
  Eigen::MatrixXd mass_matrix(double s) const;
  /// Base-excitation participation gamma_k(s); pass s < 0 for the bare beam.
  Eigen::VectorXd excitation_vector(double s) const;
  /// Stretching force sum_ijk T_nijk q_i q_j q_k = (kappa/G11^2) (q'Gq) (Gq)_n.
  Eigen::VectorXd cubic_force(const Eigen::VectorXd& q) const;
  /// Fully symmetric coupling tensor T_nijk of the quartic stretch energy.
  double cubic_tensor(int n, int i, int j, int k) const;
};

ModalModel multi_mode_model(const BeamParameters& beam, const SliderParameters& slider,
                            int n_modes);

}  // namespace slidelab::rom
