#include "slidelab/ssim.hpp"

#include "slidelab/errors.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slidelab::ssim {

namespace {

constexpr double kImagTol = 1e-8;
constexpr double kNegTol = 1e-12;
constexpr double kTangencyTol = 1e-8;
// A double root comes back from the eigensolver as a pair with |Im| ~ sqrt(eps).
constexpr double kPairTol = 1e-6;

double wrap_pi(double t) {
  while (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;
  while (t < -std::numbers::pi) t += 2.0 * std::numbers::pi;
  return t;
}

struct ShbTerms {
  double a, b, k, f;
};

ShbTerms shb_terms(const rom::RomCoefficients& c, const ExcitationParameters& e) {
  const double r = e.frequency_ratio;
  return {1.0 - (1.0 + c.mu) * r * r, 2.0 * c.damping * r, 0.75 * c.kappa,
          c.gamma * r * r * e.base_amplitude};
}

// Characteristic size of x = q^2 so the cubic's coefficients are O(1).
double cubic_scale(double a, double b, double k, double f) {
  return std::max({std::abs(a) / k, b / k, std::cbrt(f * f / (k * k))});
}

}  // namespace

void ExcitationParameters::validate() const {
  if (!(base_amplitude >= 0.0) || !std::isfinite(base_amplitude)) {
    throw ConfigError(fmt::format("excitation.base_amplitude must be >= 0 (got {})",
                                  base_amplitude));
  }
  if (!(frequency_ratio > 0.0) || !std::isfinite(frequency_ratio)) {
    throw ConfigError(fmt::format("excitation.frequency_ratio must be > 0 (got {})",
                                  frequency_ratio));
  }
}

std::string_view to_string(Stability s) { return s == Stability::stable ? "stable" : "unstable"; }

std::string_view to_string(BranchLabel b) {
  switch (b) {
    case BranchLabel::low: return "low";
    case BranchLabel::intermediate: return "intermediate";
    case BranchLabel::high: return "high";
  }
  return "?";
}

CubicRoots solve_amplitude_cubic(double a, double b, double k, double f) {
  CubicRoots out;
  const double f2 = f * f;
  if (k == 0.0) {
    const double lin = a * a + b * b;
    if (lin == 0.0) {
      throw NumericalError("amplitude cubic: undamped linear resonance has no finite root");
    }
    out.x.push_back(f2 / lin);
    return out;
  }
  const double x0 = cubic_scale(a, b, k, f);
  if (x0 == 0.0) {
    out.x.push_back(0.0);
    return out;
  }
  // Monic cubic in X = x / x0.
  const double p = 2.0 * a / (k * x0);
  const double q = (a * a + b * b) / (k * k * x0 * x0);
  const double r = -f2 / (k * k * x0 * x0 * x0);
  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = -r;
  comp(1, 2) = -q;
  comp(2, 2) = -p;
  const Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
  std::vector<double> xs;
  for (int i = 0; i < 3; ++i) {
    const std::complex<double> z = es.eigenvalues()[i];
    double X = z.real();
    if (std::abs(z.imag()) > kImagTol) {
      if (std::abs(z.imag()) > kPairTol * std::max(1.0, std::abs(X))) continue;
      if (X >= -kNegTol) xs.push_back(std::max(X, 0.0));
      continue;
    }
    if (X < -kNegTol) continue;
    const double P = ((X + p) * X + q) * X + r;
    const double dP = (3.0 * X + 2.0 * p) * X + q;
    if (dP != 0.0) {
      const double polished = X - P / dP;
      if (std::abs(polished - X) < 1e-6 * std::max(1.0, std::abs(X))) X = polished;
    }
    xs.push_back(std::max(X, 0.0));
  }
  std::sort(xs.begin(), xs.end());
  for (double X : xs) {
    if (!out.x.empty() && X - out.x.back() / x0 < kTangencyTol) {
      out.merged = true;
      out.tangent_index = static_cast<int>(out.x.size()) - 1;
      continue;
    }
    out.x.push_back(X * x0);
  }
  if (out.x.empty()) {
    throw NumericalError(fmt::format("amplitude cubic: no admissible real root (a={}, b={}, "
                                     "k={}, F={})", a, b, k, f));
  }
  return out;
}

double amplitude_cubic_discriminant(const rom::RomCoefficients& c,
                                    const ExcitationParameters& e) {
  const auto [a, b, k, f] = shb_terms(c, e);
  if (k == 0.0) return -1.0;
  const double x0 = cubic_scale(a, b, k, f);
  const double p = 2.0 * a / (k * x0);
  const double q = (a * a + b * b) / (k * k * x0 * x0);
  const double r = -f * f / (k * k * x0 * x0 * x0);
  return 18.0 * p * q * r - 4.0 * p * p * p * r + p * p * q * q - 4.0 * q * q * q -
         27.0 * r * r;
}

StabilityLabels classify_stability(std::span<const double> sorted_amplitudes,
                                   int tangent_index) {
  StabilityLabels out;
  const std::size_t n = sorted_amplitudes.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted_amplitudes[i] < sorted_amplitudes[i - 1]) {
      throw DomainError("classify_stability: amplitudes must be sorted ascending");
    }
  }
  switch (n) {
    case 1:
      out.labels = {Stability::stable};
      break;
    case 2: {
      out.degenerate = true;
      const int t = tangent_index >= 0 ? tangent_index : 0;
      out.labels = {Stability::stable, Stability::stable};
      out.labels[static_cast<std::size_t>(std::clamp(t, 0, 1))] = Stability::unstable;
      break;
    }
    case 3:
      out.labels = {Stability::stable, Stability::unstable, Stability::stable};
      break;
    default:
      throw DomainError(fmt::format("classify_stability: expected 1-3 roots, got {}", n));
  }
  return out;
}

double phase_lag(const rom::RomCoefficients& c, const ExcitationParameters& e, double q_hat) {
  if (!(q_hat >= 0.0)) throw DomainError("phase_lag: q_hat must be >= 0");
  const auto [a, b, k, f] = shb_terms(c, e);
  const std::complex<double> z(a + k * q_hat * q_hat, b);
  const double arg_f = f >= 0.0 ? 0.0 : std::numbers::pi;
  return wrap_pi(arg_f - std::arg(z));
}

std::complex<double> shb_residual(const rom::RomCoefficients& c, const ExcitationParameters& e,
                                  double q_hat, double theta) {
  const auto [a, b, k, f] = shb_terms(c, e);
  const std::complex<double> z(a + k * q_hat * q_hat, b);
  return z * q_hat * std::polar(1.0, theta) - f;
}

AmplitudeSolution solve_amplitudes(const rom::RomCoefficients& c, const ExcitationParameters& e) {
  const auto [a, b, k, f] = shb_terms(c, e);
  const CubicRoots roots = solve_amplitude_cubic(a, b, k, f);
  std::vector<double> amps;
  for (double x : roots.x) amps.push_back(std::sqrt(x));
  const StabilityLabels st = classify_stability(amps, roots.tangent_index);

  AmplitudeSolution out;
  out.degenerate = st.degenerate;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    SsimPoint p;
    p.s = c.slider_position;
    p.amplitude = amps[i];
    p.phase = phase_lag(c, e, amps[i]);
    p.stability = st.labels[i];
    out.points.push_back(p);
  }
  const auto by_phase = [](const SsimPoint& p) {
    return p.phase > -0.5 * std::numbers::pi ? BranchLabel::high : BranchLabel::low;
  };
  if (amps.size() == 3) {
    out.points[0].label = BranchLabel::low;
    out.points[1].label = BranchLabel::intermediate;
    out.points[2].label = BranchLabel::high;
  } else if (amps.size() == 2) {
    const std::size_t t = static_cast<std::size_t>(std::max(roots.tangent_index, 0));
    out.points[t].label = BranchLabel::intermediate;
    out.points[1 - t].label = t == 0 ? BranchLabel::high : BranchLabel::low;
  } else {
    out.points[0].label = by_phase(out.points[0]);
  }
  return out;
}

double effective_frequency_ratio(const rom::RomCoefficients& c, double q_hat) {
  return std::sqrt((1.0 + 0.75 * c.kappa * q_hat * q_hat) / (1.0 + c.mu));
}

std::optional<double> backbone_amplitude(const rom::RomCoefficients& c, double frequency_ratio) {
  if (!(c.kappa > 0.0)) throw DomainError("backbone_amplitude: kappa must be > 0");
  const double r = frequency_ratio;
  const double radicand = 4.0 / (3.0 * c.kappa) * ((1.0 + c.mu) * r * r - 1.0);
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

double modulation_threshold(double restitution, double clearance) {
  if (!(restitution >= 0.0 && restitution <= 1.0)) {
    throw DomainError(fmt::format("modulation_threshold: r = {} outside [0, 1]", restitution));
  }
  if (!(clearance > 0.0)) throw DomainError("modulation_threshold: clearance must be > 0");
  const double rho = 2.0 / std::numbers::pi * (1.0 - restitution) / (1.0 + restitution);
  return clearance * rho / std::sqrt(1.0 + rho * rho);
}

}  // namespace slidelab::ssim
