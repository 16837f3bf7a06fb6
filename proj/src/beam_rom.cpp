#include "slidelab/beam_rom.hpp"

#include "slidelab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace slidelab::rom {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(l) - 1/cosh(l): same roots as cos(l) cosh(l) - 1 but bounded.
double scaled_frequency_function(double l) { return std::cos(l) - 1.0 / std::cosh(l); }
double scaled_frequency_derivative(double l) {
  const double ch = std::cosh(l);
  return -std::sin(l) + std::sinh(l) / (ch * ch);
}

}  // namespace

BeamParameters BeamParameters::rectangular(double length, double thickness, double density,
                                           double youngs_modulus, double free_length_mass,
                                           double axial_clamping_stiffness,
                                           double damping_ratio,
                                           std::optional<double> modal_frequency) {
  BeamParameters b;
  b.length = length;
  b.thickness = thickness;
  b.density = density;
  b.youngs_modulus = youngs_modulus;
  b.area = free_length_mass / (density * length);
  b.area_moment = b.area * thickness * thickness / 12.0;
  b.axial_clamping_stiffness = axial_clamping_stiffness;
  b.damping_ratio = damping_ratio;
  b.modal_frequency = modal_frequency;
  return b;
}

void BeamParameters::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(fmt::format("beam.{} must be finite and > 0 (got {})", name, v));
    }
  };
  positive(length, "length");
  positive(thickness, "thickness");
  positive(density, "density");
  positive(youngs_modulus, "youngs_modulus");
  positive(area, "area");
  positive(area_moment, "area_moment");
  positive(axial_clamping_stiffness, "axial_clamping_stiffness");
  if (!(damping_ratio >= 0.0)) throw ConfigError("beam.damping_ratio must be >= 0");
  if (modal_frequency) positive(*modal_frequency, "modal_frequency");
  const double rect = area * thickness * thickness / 12.0;
  if (std::abs(area_moment - rect) > 1e-12 * rect) {
    throw ConfigError(fmt::format(
        "beam.area_moment {} inconsistent with a rectangular section (A h^2/12 = {})",
        area_moment, rect));
  }
}

void SliderParameters::validate(const BeamParameters& beam) const {
  if (!(mass >= 0.0)) throw ConfigError("slider.mass must be >= 0");
  if (!(rotary_inertia >= 0.0)) throw ConfigError("slider.rotary_inertia must be >= 0");
  if (!(contact_spacing > 0.0)) throw ConfigError("slider.contact_spacing must be > 0");
  if (!(gap > beam.thickness)) {
    throw ConfigError(fmt::format("slider.gap {} must exceed the beam thickness {}", gap,
                                  beam.thickness));
  }
  if (!(friction_coefficient >= 0.0)) {
    throw ConfigError("slider.friction_coefficient must be >= 0");
  }
  if (!(restitution >= 0.0 && restitution <= 1.0)) {
    throw ConfigError("slider.restitution must lie in [0, 1]");
  }
}

double solve_frequency_equation(int mode_index) {
  if (mode_index < 1) {
    throw DomainError(fmt::format("mode_index must be >= 1 (got {})", mode_index));
  }
  double lo = (mode_index + 0.4) * kPi;
  double hi = (mode_index + 0.6) * kPi;
  double flo = scaled_frequency_function(lo);
  const double fhi = scaled_frequency_function(hi);
  if (flo * fhi > 0.0) {
    throw NumericalError(
        fmt::format("frequency equation: no sign change on bracket [{}, {}]", lo, hi));
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = scaled_frequency_function(x);
    if (f == 0.0) return x;
    if ((f < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = f;
    } else {
      hi = x;
    }
    const double df = scaled_frequency_derivative(x);
    double next = x - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) return next;
    x = next;
  }
  throw NumericalError(fmt::format(
      "frequency equation: no convergence for mode {} on bracket [{}, {}]", mode_index, lo, hi));
}

ModeShapeEval mode_shape(double lambda, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw DomainError(fmt::format("mode_shape: xi = {} outside [0, 1]", xi));
  }
  // phi = cos x + c sin x - (cosh x + c sinh x), x = lambda xi. Writing
  // c = -1 + k/(cos l - cosh l) turns the hyperbolic pair into
  // exp(-x) + k sinh(x)/(cos l - cosh l), which stays bounded for large l.
  const double l = lambda;
  const double x = l * xi;
  const double c = (std::sin(l) + std::sinh(l)) / (std::cos(l) - std::cosh(l));
  const double k = std::sin(l) + std::cos(l) - std::exp(-l);
  const double denom = 2.0 * std::cos(l) * std::exp(-l) - 1.0 - std::exp(-2.0 * l);
  const double ep = std::exp(x - l);
  const double em = std::exp(-x - l);
  const double sinh_ratio = (ep - em) / denom;
  const double cosh_ratio = (ep + em) / denom;
  const double e = std::exp(-x);
  const double sx = std::sin(x);
  const double cx = std::cos(x);

  ModeShapeEval out;
  out.xi = xi;
  out.phi = cx + c * sx - e - k * sinh_ratio;
  out.dphi = l * (-sx + c * cx + e - k * cosh_ratio);
  out.ddphi = l * l * (-cx - c * sx - e - k * sinh_ratio);
  return out;
}

Quadratures integrate_quadratures(double lambda) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double kTol = 1e-13;  // relative; both integrals are O(1..100)
  Quadratures q;
  double err = 0.0;
  q.integral_phi = gauss_kronrod<double, 61>::integrate(
      [lambda](double x) { return mode_shape(lambda, x).phi; }, 0.0, 1.0, 15, kTol, &err);
  q.integral_dphi_sq = gauss_kronrod<double, 61>::integrate(
      [lambda](double x) {
        const double d = mode_shape(lambda, x).dphi;
        return d * d;
      },
      0.0, 1.0, 15, kTol, &err);
  return q;
}

double axial_stiffness(const BeamParameters& beam) {
  const double stretching = beam.youngs_modulus * beam.area / beam.length;
  return 1.0 / (1.0 / stretching + 1.0 / beam.axial_clamping_stiffness);
}

double analytic_modal_frequency(const BeamParameters& beam, double lambda) {
  const double L = beam.length;
  return std::sqrt(beam.youngs_modulus * beam.area_moment /
                   (beam.density * beam.area * L * L * L * L)) *
         lambda * lambda;
}

double modal_frequency(const BeamParameters& beam, double lambda) {
  return beam.modal_frequency ? *beam.modal_frequency : analytic_modal_frequency(beam, lambda);
}

RomBasis rom_basis() {
  RomBasis b;
  b.lambda = solve_frequency_equation(1);
  b.phi_half = mode_shape(b.lambda, 0.5).phi;
  b.quad = integrate_quadratures(b.lambda);
  return b;
}

RomCoefficients rom_coefficients(const BeamParameters& beam, const SliderParameters& slider,
                                 double s) {
  return rom_coefficients(beam, slider, s, rom_basis());
}

RomCoefficients rom_coefficients(const BeamParameters& beam, const SliderParameters& slider,
                                 double s, const RomBasis& basis) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError(fmt::format("rom_coefficients: s = {} outside [0, 1]", s));
  }
  const double lambda = basis.lambda;
  const ModeShapeEval at_s = mode_shape(lambda, s);
  const double phi_half = basis.phi_half;
  const Quadratures& quad = basis.quad;

  const double L = beam.length;
  const double beam_mass = beam.mass();
  const double mass_ratio = slider.mass / beam_mass;
  const double bending = beam.youngs_modulus * beam.area_moment / (L * L * L) *
                         std::pow(lambda, 4);
  const double stretch = quad.integral_dphi_sq / phi_half;

  RomCoefficients c;
  c.lambda = lambda;
  c.omega = modal_frequency(beam, lambda);
  c.k_ax = axial_stiffness(beam);
  c.mu = mass_ratio * at_s.phi * at_s.phi +
         slider.rotary_inertia_about_center() / (beam_mass * L * L * L) * at_s.dphi * at_s.dphi;
  c.kappa = c.k_ax / bending * 0.5 * stretch * stretch;
  c.gamma = phi_half * (quad.integral_phi + mass_ratio * at_s.phi);
  c.damping = beam.damping_ratio;
  c.slider_position = s;
  return c;
}

}  // namespace slidelab::rom
