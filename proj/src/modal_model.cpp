#include "slidelab/beam_rom.hpp"

#include "slidelab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <cmath>

namespace slidelab::rom {

ModalModel multi_mode_model(const BeamParameters& beam, const SliderParameters& slider,
                            int n_modes) {
  if (n_modes < 1 || n_modes > 8) {
    throw DomainError(fmt::format("multi_mode_model: n_modes = {} outside [1, 8]", n_modes));
  }
  using boost::math::quadrature::gauss_kronrod;

  ModalModel m;
  m.n_modes = n_modes;
  for (int k = 1; k <= n_modes; ++k) m.lambda.push_back(solve_frequency_equation(k));
  for (double l : m.lambda) {
    const double ratio = l / m.lambda.front();
    m.frequency_ratio.push_back(ratio * ratio);
  }
  m.shape_scale = 1.0 / mode_shape(m.lambda.front(), 0.5).phi;

  m.stretch_gram.resize(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i) {
    for (int j = i; j < n_modes; ++j) {
      const double li = m.lambda[i];
      const double lj = m.lambda[j];
      double err = 0.0;
      const double g = gauss_kronrod<double, 61>::integrate(
          [li, lj](double x) { return mode_shape(li, x).dphi * mode_shape(lj, x).dphi; }, 0.0,
          1.0, 15, 1e-13, &err);
      m.stretch_gram(i, j) = g;
      m.stretch_gram(j, i) = g;
    }
    m.integral_phi.push_back(integrate_quadratures(m.lambda[i]).integral_phi);
  }
  // Antisymmetric modes integrate to zero exactly; drop quadrature noise.
  for (int i = 1; i < n_modes; i += 2) m.integral_phi[i] = 0.0;
  for (int i = 0; i < n_modes; ++i) {
    for (int j = 0; j < n_modes; ++j) {
      if ((i + j) % 2 == 1) m.stretch_gram(i, j) = 0.0;
    }
  }

  const RomCoefficients rc = rom_coefficients(beam, slider, 0.5);
  m.kappa = rc.kappa;
  m.damping = rc.damping;
  m.omega = rc.omega;
  m.k_ax = rc.k_ax;
  const double g11 = m.stretch_gram(0, 0);
  m.cubic_scale = m.kappa / (g11 * g11);
  const double L = beam.length;
  m.mass_ratio = slider.mass / beam.mass();
  m.rotary_ratio = slider.rotary_inertia_about_center() / (beam.mass() * L * L * L);
  return m;
}

Eigen::MatrixXd ModalModel::mass_matrix(double s) const {
  Eigen::VectorXd phi(n_modes);
  Eigen::VectorXd dphi(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const ModeShapeEval e = mode_shape(lambda[k], s);
    phi[k] = e.phi;
    dphi[k] = e.dphi;
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n_modes, n_modes);
  M += mass_ratio * phi * phi.transpose();
  M += rotary_ratio * dphi * dphi.transpose();
  return M;
}

Eigen::VectorXd ModalModel::excitation_vector(double s) const {
  Eigen::VectorXd g(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    double v = integral_phi[k];
    if (s >= 0.0) v += mass_ratio * mode_shape(lambda[k], s).phi;
    g[k] = v / shape_scale;
  }
  return g;
}

Eigen::VectorXd ModalModel::cubic_force(const Eigen::VectorXd& q) const {
  const Eigen::VectorXd gq = stretch_gram * q;
  return cubic_scale * q.dot(gq) * gq;
}

double ModalModel::cubic_tensor(int n, int i, int j, int k) const {
  const auto& G = stretch_gram;
  return cubic_scale / 3.0 * (G(n, i) * G(j, k) + G(n, j) * G(i, k) + G(n, k) * G(i, j));
}

}  // namespace slidelab::rom
