#include "slidelab/beam_rom.hpp"
#include "slidelab/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace slidelab;
using slidelab::testing::bisect;
using slidelab::testing::simpson;

namespace {

double freq_eq(double l) { return std::cos(l) * std::cosh(l) - 1.0; }

}  // namespace

TEST(FrequencyEquation, FirstRoot) {
  const double l = rom::solve_frequency_equation(1);
  EXPECT_NEAR(l, 4.730, 1e-3);
  EXPECT_LT(std::abs(freq_eq(l)), 1e-10);
}

TEST(FrequencyEquation, SecondRootMatchesBisection) {
  // scan [7, 8.5] for the sign change, then bisect
  double lo = 7.0;
  double hi = lo;
  for (double x = 7.0; x < 8.5; x += 1e-3) {
    if ((freq_eq(x) < 0) != (freq_eq(x + 1e-3) < 0)) {
      lo = x;
      hi = x + 1e-3;
      break;
    }
  }
  ASSERT_LT(lo, hi);
  EXPECT_NEAR(rom::solve_frequency_equation(2), bisect(freq_eq, lo, hi), 1e-10);
}

TEST(FrequencyEquation, HigherRootsHaveSmallResidual) {
  for (int n = 1; n <= 8; ++n) {
    const double l = rom::solve_frequency_equation(n);
    EXPECT_NEAR(l, (n + 0.5) * std::numbers::pi, 0.1 * std::numbers::pi) << n;
    // residual relative to cosh, which is huge for high modes
    EXPECT_LT(std::abs(freq_eq(l)) / std::cosh(l), 1e-10) << n;
  }
  EXPECT_THROW(rom::solve_frequency_equation(0), DomainError);
}

TEST(ModeShape, ClampedBoundaries) {
  for (int n = 1; n <= 8; ++n) {
    const double l = rom::solve_frequency_equation(n);
    for (double xi : {0.0, 1.0}) {
      const auto m = rom::mode_shape(l, xi);
      EXPECT_NEAR(m.phi, 0.0, 1e-8) << n;
      EXPECT_NEAR(m.dphi, 0.0, 1e-8) << n;
    }
  }
}

TEST(ModeShape, OffsetAmplitudeRatio) {
  const double l = rom::solve_frequency_equation(1);
  const double half = 0.010 / (2 * 0.140);
  const double ratio = rom::mode_shape(l, 0.27 + half).phi / rom::mode_shape(l, 0.27 - half).phi;
  EXPECT_NEAR(ratio, 1.43, 0.02);
}

TEST(ModeShape, DerivativesMatchFiniteDifferences) {
  const double step = 1e-6;
  for (int n = 1; n <= 5; ++n) {
    const double l = rom::solve_frequency_equation(n);
    for (double xi = 0.05; xi < 0.96; xi += 0.0737) {
      const auto m = rom::mode_shape(l, xi);
      const double fd1 =
          (rom::mode_shape(l, xi + step).phi - rom::mode_shape(l, xi - step).phi) / (2 * step);
      const double fd2 =
          (rom::mode_shape(l, xi + step).dphi - rom::mode_shape(l, xi - step).dphi) / (2 * step);
      const double scale1 = std::max(1.0, std::abs(m.dphi));
      const double scale2 = std::max(1.0, std::abs(m.ddphi));
      EXPECT_LT(std::abs(m.dphi - fd1) / scale1, 1e-6) << n << " " << xi;
      EXPECT_LT(std::abs(m.ddphi - fd2) / scale2, 1e-6) << n << " " << xi;
    }
  }
}

TEST(ModeShape, DomainChecked) {
  const double l = rom::solve_frequency_equation(1);
  EXPECT_THROW(rom::mode_shape(l, -1e-3), DomainError);
  EXPECT_THROW(rom::mode_shape(l, 1.001), DomainError);
}

TEST(Quadratures, MatchSimpson) {
  const double l = rom::solve_frequency_equation(1);
  const auto q = rom::integrate_quadratures(l);
  const double dphi_sq = simpson(
      [&](double x) {
        const double d = rom::mode_shape(l, x).dphi;
        return d * d;
      },
      0.0, 1.0, 1'000'000);
  const double phi = simpson([&](double x) { return rom::mode_shape(l, x).phi; }, 0.0, 1.0,
                             1'000'000);
  EXPECT_NEAR(q.integral_dphi_sq, dphi_sq, 1e-9);
  EXPECT_NEAR(q.integral_phi, phi, 1e-9);
}

TEST(Quadratures, MirroredIntegralIdentical) {
  const double l = rom::solve_frequency_equation(1);
  const auto fwd = simpson([&](double x) { return rom::mode_shape(l, x).phi; }, 0.0, 1.0, 20000);
  const auto mir =
      simpson([&](double x) { return rom::mode_shape(l, 1.0 - x).phi; }, 0.0, 1.0, 20000);
  EXPECT_NEAR(fwd, mir, 1e-10);
}

class TableRom : public ::testing::Test {
 protected:
  config::RunConfig cfg = slidelab::testing::table_config();
};

TEST_F(TableRom, KappaFromQuadratures) {
  const auto basis = rom::rom_basis();
  const auto c = rom::rom_coefficients(cfg.beam, cfg.slider, 0.3);
  const auto& b = cfg.beam;
  const double bending = b.youngs_modulus * b.area_moment / std::pow(b.length, 3) *
                         std::pow(basis.lambda, 4);
  const double stretch = basis.quad.integral_dphi_sq / basis.phi_half;
  EXPECT_DOUBLE_EQ(c.kappa, rom::axial_stiffness(b) / bending * 0.5 * stretch * stretch);
}

TEST_F(TableRom, NoSliderLimit) {
  auto slider = cfg.slider;
  slider.mass = 0.0;
  slider.rotary_inertia = 0.0;
  const auto basis = rom::rom_basis();
  for (double s : {0.1, 0.27, 0.5}) {
    const auto c = rom::rom_coefficients(cfg.beam, slider, s);
    EXPECT_EQ(c.mu, 0.0);
    EXPECT_NEAR(c.gamma, basis.phi_half * basis.quad.integral_phi, 1e-14);
  }
}

TEST_F(TableRom, FrequencyShifts) {
  const auto c = rom::rom_coefficients(cfg.beam, cfg.slider, 0.5);
  EXPECT_NEAR(1.0 / std::sqrt(1.0 + c.mu), 0.36, 0.03);
  const double hl = cfg.beam.thickness / cfg.beam.length;
  EXPECT_NEAR(std::sqrt(1.0 + 0.75 * c.kappa * hl * hl), 1.12, 0.02);
  EXPECT_NEAR(std::sqrt(1.0 + 0.75 * c.kappa * 4 * hl * hl), 1.42, 0.03);
  EXPECT_NEAR(c.omega, 2 * std::numbers::pi * 260.0, 1e-9);
}

TEST_F(TableRom, SymmetryAndConstantKappa) {
  const auto ref = rom::rom_coefficients(cfg.beam, cfg.slider, 0.5);
  for (double s = 0.0; s <= 0.5; s += 0.01) {
    const auto a = rom::rom_coefficients(cfg.beam, cfg.slider, s);
    const auto b = rom::rom_coefficients(cfg.beam, cfg.slider, 1.0 - s);
    EXPECT_NEAR(a.mu, b.mu, 1e-10) << s;
    EXPECT_NEAR(a.gamma, b.gamma, 1e-10) << s;
    EXPECT_EQ(a.kappa, ref.kappa);
    EXPECT_EQ(a.k_ax, ref.k_ax);
    EXPECT_GE(a.mu, 0.0);
  }
}

TEST_F(TableRom, AxialStiffnessInSeries) {
  const auto& b = cfg.beam;
  const double k = rom::axial_stiffness(b);
  EXPECT_NEAR(1.0 / k, b.length / (b.youngs_modulus * b.area) + 1.0 / b.axial_clamping_stiffness,
              1e-22);
  EXPECT_LT(k, std::min(b.youngs_modulus * b.area / b.length, b.axial_clamping_stiffness));
}

TEST_F(TableRom, FrequencyScalesWithSqrtE) {
  auto b = cfg.beam;
  const double l = rom::solve_frequency_equation(1);
  const double w1 = rom::analytic_modal_frequency(b, l);
  b.youngs_modulus *= 4.0;
  EXPECT_NEAR(rom::analytic_modal_frequency(b, l), 2.0 * w1, 1e-9 * w1);
  b.modal_frequency.reset();
  EXPECT_EQ(rom::modal_frequency(b, l), rom::analytic_modal_frequency(b, l));
}

TEST_F(TableRom, PureAndDeterministic) {
  const auto a = rom::rom_coefficients(cfg.beam, cfg.slider, 0.27);
  const auto b = rom::rom_coefficients(cfg.beam, cfg.slider, 0.27);
  EXPECT_EQ(a.mu, b.mu);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.kappa, b.kappa);
}

TEST_F(TableRom, ValidationRejectsBadInputs) {
  auto b = cfg.beam;
  b.area_moment *= 1.001;
  EXPECT_THROW(b.validate(), ConfigError);
  auto s = cfg.slider;
  s.gap = cfg.beam.thickness;
  EXPECT_THROW(s.validate(cfg.beam), ConfigError);
  s = cfg.slider;
  s.restitution = 1.2;
  EXPECT_THROW(s.validate(cfg.beam), ConfigError);
  EXPECT_THROW(rom::rom_coefficients(cfg.beam, cfg.slider, 1.1), DomainError);
}

TEST_F(TableRom, MultiModeReducesToSingleMode) {
  const auto m = rom::multi_mode_model(cfg.beam, cfg.slider, 1);
  const double s = 0.27;
  const auto c = rom::rom_coefficients(cfg.beam, cfg.slider, s);
  EXPECT_NEAR(m.mass_matrix(s)(0, 0), 1.0 + c.mu, 1e-10);
  EXPECT_NEAR(m.excitation_vector(s)(0), c.gamma, 1e-10);
  Eigen::VectorXd q(1);
  q << 0.01;
  EXPECT_NEAR(m.cubic_force(q)(0), c.kappa * 1e-6, 1e-10 * c.kappa * 1e-6);
  EXPECT_THROW(rom::multi_mode_model(cfg.beam, cfg.slider, 9), DomainError);
}

TEST_F(TableRom, CubicTensorSymmetric) {
  const auto m = rom::multi_mode_model(cfg.beam, cfg.slider, 4);
  for (int n = 0; n < 4; ++n)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const double t = m.cubic_tensor(n, i, j, k);
          const double scale = std::max(1.0, std::abs(t)) * 1e-12;
          EXPECT_NEAR(t, m.cubic_tensor(i, n, j, k), scale);
          EXPECT_NEAR(t, m.cubic_tensor(n, j, i, k), scale);
          EXPECT_NEAR(t, m.cubic_tensor(k, i, j, n), scale);
        }
}

TEST_F(TableRom, CubicForceIsTensorContraction) {
  const auto m = rom::multi_mode_model(cfg.beam, cfg.slider, 3);
  Eigen::VectorXd q(3);
  q << 0.004, -0.0007, 0.0002;
  const auto f = m.cubic_force(q);
  for (int n = 0; n < 3; ++n) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) sum += m.cubic_tensor(n, i, j, k) * q(i) * q(j) * q(k);
    EXPECT_NEAR(f(n), sum, 1e-12 * std::max(1.0, std::abs(sum)));
  }
}
