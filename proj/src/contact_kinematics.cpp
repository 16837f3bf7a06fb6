#include "contact_core.hpp"

#include "slidelab/errors.hpp"

#include <Eigen/LU>
#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace slidelab::contact {

ModeTable::ModeTable(const std::vector<double>& lambdas, int intervals)
    : n_modes_(static_cast<int>(lambdas.size())), intervals_(intervals), h_(1.0 / intervals) {
  data_.resize(static_cast<std::size_t>((intervals + 1) * n_modes_ * 3));
  for (int i = 0; i <= intervals; ++i) {
    const double xi = std::min(1.0, i * h_);
    for (int k = 0; k < n_modes_; ++k) {
      const rom::ModeShapeEval e = rom::mode_shape(lambdas[static_cast<std::size_t>(k)], xi);
      double* d = &data_[static_cast<std::size_t>((i * n_modes_ + k) * 3)];
      d[0] = e.phi;
      d[1] = e.dphi;
      d[2] = e.ddphi;
    }
  }
}

void ModeTable::eval(double xi, double* phi, double* dphi) const {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw DomainError(fmt::format("mode table: xi = {} outside [0, 1]", xi));
  }
  int i = static_cast<int>(xi / h_);
  if (i >= intervals_) i = intervals_ - 1;
  const double t = (xi - i * h_) / h_;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double* a = &data_[static_cast<std::size_t>(i * n_modes_ * 3)];
  const double* b = a + n_modes_ * 3;
  for (int k = 0; k < n_modes_; ++k) {
    const double* ak = a + 3 * k;
    const double* bk = b + 3 * k;
    phi[k] = h00 * ak[0] + h10 * h_ * ak[1] + h01 * bk[0] + h11 * h_ * bk[1];
    dphi[k] = h00 * ak[1] + h10 * h_ * ak[2] + h01 * bk[1] + h11 * h_ * bk[2];
  }
}

Model Model::build(const rom::BeamParameters& beam, const rom::SliderParameters& slider,
                   int n_modes, double gravity) {
  beam.validate();
  slider.validate(beam);
  if (n_modes > kMaxModes) {
    throw ConfigError(fmt::format("n_modes = {} exceeds {}", n_modes, kMaxModes));
  }
  Model m;
  m.beam = beam;
  m.slider = slider;
  m.modal = rom::multi_mode_model(beam, slider, n_modes);
  m.table = ModeTable(m.modal.lambda, 4096);
  m.gravity = gravity;
  const double c = m.modal.shape_scale;
  m.modal_mass = beam.mass() * beam.length * beam.length * c * c;
  return m;
}

double Drive::base(double t) const { return amplitude * std::cos(frequency * t); }
double Drive::acceleration(double t) const {
  return -amplitude * frequency * frequency * std::cos(frequency * t);
}
double Drive::period() const { return 2.0 * std::numbers::pi / frequency; }

Drive make_drive(const Model& model, const ssim::ExcitationParameters& exc) {
  if (!(exc.frequency_ratio > 0.0)) throw ConfigError("excitation.frequency_ratio must be > 0");
  if (!(exc.base_amplitude >= 0.0)) throw ConfigError("excitation.base_amplitude must be >= 0");
  return {exc.base_amplitude * model.beam.length, exc.frequency_ratio * model.modal.omega};
}

namespace detail {

Coords to_coords(const Model& model, const SystemState& st) {
  const int n = model.modal.n_modes;
  if (st.q.size() != n || st.q_tau.size() != n) {
    throw DomainError(fmt::format("state has {} modal coordinates, model has {}", st.q.size(), n));
  }
  const double d = model.slider.com_offset;
  const double L = model.beam.length;
  Coords c;
  c.z.resize(n + 3);
  c.u.resize(n + 3);
  c.z.head(n) = st.q;
  c.u.head(n) = st.q_tau * model.modal.omega;
  const double sb = std::sin(st.beta);
  const double cb = std::cos(st.beta);
  c.z[n] = st.s * L + d * sb;
  c.z[n + 1] = st.y - d * cb;
  c.z[n + 2] = st.beta;
  c.u[n] = st.s_dot * L + d * cb * st.beta_dot;
  c.u[n + 1] = st.y_dot + d * sb * st.beta_dot;
  c.u[n + 2] = st.beta_dot;
  c.t = st.t;
  return c;
}

SystemState to_state(const Model& model, const Coords& c) {
  const int n = model.modal.n_modes;
  const double d = model.slider.com_offset;
  const double L = model.beam.length;
  SystemState st;
  st.q = c.z.head(n);
  st.q_tau = c.u.head(n) / model.modal.omega;
  const double beta = c.z[n + 2];
  const double sb = std::sin(beta);
  const double cb = std::cos(beta);
  st.beta = beta;
  st.beta_dot = c.u[n + 2];
  st.s = (c.z[n] - d * sb) / L;
  st.y = c.z[n + 1] + d * cb;
  st.s_dot = (c.u[n] - d * cb * st.beta_dot) / L;
  st.y_dot = c.u[n + 1] - d * sb * st.beta_dot;
  st.t = c.t;
  return st;
}

double kinematic_position(const Model& model, const GenVector& z, SliderMode mode,
                          double s_prescribed) {
  if (mode == SliderMode::pcs) return s_prescribed;
  const int n = model.modal.n_modes;
  return (z[n] - model.slider.com_offset * std::sin(z[n + 2])) / model.beam.length;
}

void evaluate_contacts(const Model& model, const GenVector& z, double s_kin, ContactRows& out) {
  const int n = model.modal.n_modes;
  const double L = model.beam.length;
  const double c = model.modal.shape_scale;
  const double h = model.beam.thickness;
  const double B = model.slider.contact_spacing;
  const double R = model.slider.gap;
  const double d = model.slider.com_offset;
  const double half = B / (2.0 * L);
  if (!(s_kin > half && s_kin < 1.0 - half)) {
    throw DomainError(fmt::format("slider at s = {} overlaps the clamp region", s_kin));
  }
  const double beta = z[n + 2];
  const double sb = std::sin(beta);
  const double cb = std::cos(beta);
  double phi[kMaxModes];
  double dphi[kMaxModes];
  for (int i = 0; i < 4; ++i) {
    const double zx = kZetaX[static_cast<std::size_t>(i)];
    const double zz = kZetaZ[static_cast<std::size_t>(i)];
    const double p = s_kin + zx * half;
    model.table.eval(p, phi, dphi);
    double w = 0.0;
    double wx = 0.0;
    for (int k = 0; k < n; ++k) {
      w += phi[k] * z[k];
      wx += dphi[k] * z[k];
    }
    w *= L * c;
    wx *= c;
    const double lx = zx * 0.5 * B;
    const double ly = d + zz * 0.5 * R;
    const double rx = cb * lx - sb * ly;
    const double ry = sb * lx + cb * ly;
    const double py = z[n + 1] + ry;
    out.p[static_cast<std::size_t>(i)] = p;
    out.slope[static_cast<std::size_t>(i)] = wx;
    out.gap[static_cast<std::size_t>(i)] = zz * (py - w) - 0.5 * h;

    const double inv = 1.0 / std::sqrt(1.0 + wx * wx);
    const double nx = -wx * inv, ny = inv;
    const double tx = inv, ty = wx * inv;
    GenVector& rn = out.wn[static_cast<std::size_t>(i)];
    GenVector& rt = out.wt[static_cast<std::size_t>(i)];
    rn.resize(n + 3);
    rt.resize(n + 3);
    for (int k = 0; k < n; ++k) {
      const double beam = L * c * phi[k];
      rn[k] = -zz * ny * beam;
      rt[k] = -ty * beam;
    }
    rn[n] = zz * nx;
    rn[n + 1] = zz * ny;
    rn[n + 2] = zz * (-nx * ry + ny * rx);
    rt[n] = tx;
    rt[n + 1] = ty;
    rt[n + 2] = -tx * ry + ty * rx;
  }
}

}  // namespace detail

Kinematics contact_kinematics(const Model& model, const SystemState& state, double s_kin) {
  const detail::Coords c = detail::to_coords(model, state);
  detail::ContactRows rows;
  detail::evaluate_contacts(model, c.z, s_kin, rows);
  Kinematics k;
  for (std::size_t i = 0; i < 4; ++i) {
    k.p[i] = rows.p[i];
    k.gap[i] = rows.gap[i];
    k.slope[i] = rows.slope[i];
    k.normal_velocity[i] = rows.wn[i].dot(c.u);
    k.tangential_velocity[i] = rows.wt[i].dot(c.u);
  }
  return k;
}

double beam_displacement(const Model& model, const SystemState& state, double xi) {
  double phi[kMaxModes];
  double dphi[kMaxModes];
  model.table.eval(xi, phi, dphi);
  double w = 0.0;
  for (int k = 0; k < model.modal.n_modes; ++k) w += phi[k] * state.q[k];
  return w * model.beam.length * model.modal.shape_scale;
}

double beam_slope(const Model& model, const SystemState& state, double xi) {
  double phi[kMaxModes];
  double dphi[kMaxModes];
  model.table.eval(xi, phi, dphi);
  double wx = 0.0;
  for (int k = 0; k < model.modal.n_modes; ++k) wx += dphi[k] * state.q[k];
  return wx * model.modal.shape_scale;
}

SystemState centered_state(const Model& model, double s) {
  SystemState st;
  const int n = model.modal.n_modes;
  st.q = ModalVector::Zero(n);
  st.q_tau = ModalVector::Zero(n);
  st.s = s;
  return st;
}

namespace {

// Newton on the full static equilibrium: modal and slider force balance with
// normal forces at P1/P4, zero gaps there, and equal tangential forces (the
// split of the tangential load between two sticking contacts is otherwise free).
void refine_statics(const Model& model, SystemState& st) {
  const int n = model.modal.n_modes;
  const auto& mm = model.modal;
  const double L = model.beam.length;
  const double m = model.slider.mass;
  const double mg = m * model.gravity;
  const double d = model.slider.com_offset;
  const double Mq = model.modal_mass;
  const Eigen::VectorXd gamma = mm.excitation_vector(-1.0);
  const int nx = n + 5;

  const auto residual = [&](const Eigen::VectorXd& x) {
    detail::Coords c = detail::to_coords(model, st);
    c.z.head(n) = x.head(n);
    c.z[n] = st.s * L + d * std::sin(x[n + 1]);
    c.z[n + 1] = x[n];
    c.z[n + 2] = x[n + 1];
    detail::ContactRows rows;
    detail::evaluate_contacts(model, c.z, st.s, rows);
    GenVector f = GenVector::Zero(n + 3);
    const ModalVector q = c.z.head(n);
    for (int k = 0; k < n; ++k) {
      const double wk = mm.omega * mm.frequency_ratio[static_cast<std::size_t>(k)];
      f[k] = -Mq * (wk * wk * q[k] + gamma[k] * model.gravity / L);
    }
    if (!model.linear) {
      const ModalVector gq = mm.stretch_gram * q;
      f.head(n) -= (Mq * mm.omega * mm.omega * mm.cubic_scale * q.dot(gq)) * gq;
    }
    f[n + 1] = -mg;
    f += x[n + 2] * rows.wn[0] + x[n + 3] * rows.wn[3] + x[n + 4] * (rows.wt[0] + rows.wt[3]);
    Eigen::VectorXd r(nx);
    for (int k = 0; k < n; ++k) r[k] = f[k] / (Mq * mm.omega * mm.omega);
    r[n] = f[n] / mg;
    r[n + 1] = f[n + 1] / mg;
    r[n + 2] = f[n + 2] / (mg * model.slider.contact_spacing);
    r[n + 3] = rows.gap[0] / model.beam.thickness;
    r[n + 4] = rows.gap[3] / model.beam.thickness;
    return r;
  };

  Eigen::VectorXd x(nx);
  x.head(n) = st.q;
  x[n] = st.y - d * std::cos(st.beta);
  x[n + 1] = st.beta;
  x[n + 2] = 0.5 * mg;
  x[n + 3] = 0.5 * mg;
  x[n + 4] = 0.0;
  Eigen::VectorXd scale(nx);
  scale.head(n).setConstant(1e-6);
  scale[n] = 1e-6;
  scale[n + 1] = 1e-6;
  scale.tail(3).setConstant(mg);
  for (int it = 0; it < 30; ++it) {
    const Eigen::VectorXd r = residual(x);
    if (r.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::MatrixXd J(nx, nx);
    for (int j = 0; j < nx; ++j) {
      const double step = 1e-6 * scale[j];
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += step;
      xm[j] -= step;
      J.col(j) = (residual(xp) - residual(xm)) / (2.0 * step);
    }
    const Eigen::VectorXd dx = J.fullPivLu().solve(r);
    x -= dx;
    if ((dx.array() / scale.array()).abs().maxCoeff() < 1e-10) break;
  }
  if (!x.allFinite() || x[n + 2] <= 0.0 || x[n + 3] <= 0.0) {
    throw NumericalError("resting_state: static equilibrium not found");
  }
  st.q = x.head(n);
  st.beta = x[n + 1];
  st.y = x[n] + d * std::cos(st.beta);
}

}  // namespace

SystemState resting_state(const Model& model, double s) {
  SystemState st = centered_state(model, s);
  const double L = model.beam.length;
  const double B = model.slider.contact_spacing;
  const double R = model.slider.gap;
  const double h = model.beam.thickness;
  const int n = model.modal.n_modes;
  const auto& mm = model.modal;
  const double half = B / (2.0 * L);
  // Linear statics: the slider weight splits evenly onto the upper contacts.
  if (model.gravity != 0.0 && !model.glued) {
    const Eigen::VectorXd gamma = mm.excitation_vector(-1.0);
    double phi_l[kMaxModes], phi_r[kMaxModes], dphi[kMaxModes];
    model.table.eval(s - half, phi_l, dphi);
    model.table.eval(s + half, phi_r, dphi);
    const double f = 0.5 * model.slider.mass * model.gravity;
    for (int k = 0; k < n; ++k) {
      const double wk = mm.omega * mm.frequency_ratio[static_cast<std::size_t>(k)];
      const double contact = -L * mm.shape_scale * (phi_l[k] + phi_r[k]) * f / model.modal_mass;
      st.q[k] = (-gamma[k] * model.gravity / L + contact) / (wk * wk);
    }
  }
  const double w_l = beam_displacement(model, st, s - half);
  const double w_r = beam_displacement(model, st, s + half);
  st.beta = std::asin((w_r - w_l) / B);
  // Upper-left contact on the beam's top surface.
  st.y = w_l + 0.5 * h - (-std::sin(st.beta) * 0.5 * B + std::cos(st.beta) * 0.5 * R);
  if (model.gravity != 0.0 && !model.glued && model.contacts) refine_statics(model, st);
  return st;
}

SystemState branch_state(const Model& model, double s, double frequency_ratio, double q_hat,
                         double theta) {
  SystemState st = centered_state(model, s);
  st.q[0] = q_hat * std::cos(theta);
  st.q_tau[0] = -q_hat * frequency_ratio * std::sin(theta);
  st.y = beam_displacement(model, st, s);
  SystemState rate = st;
  rate.q = st.q_tau;
  st.y_dot = beam_displacement(model, rate, s) * model.modal.omega;
  st.beta = std::atan(beam_slope(model, st, s));
  return st;
}

double mechanical_energy(const Model& model, const SystemState& state) {
  const detail::Coords c = detail::to_coords(model, state);
  const int n = model.modal.n_modes;
  const auto& mm = model.modal;
  const double Mq = model.modal_mass;
  const double L = model.beam.length;
  const double g = model.gravity;
  const ModalVector q = c.z.head(n);
  const ModalVector qd = c.u.head(n);

  double kinetic = 0.0;
  double potential = 0.0;
  Eigen::VectorXd gamma;
  if (model.glued) {
    const Eigen::MatrixXd M = mm.mass_matrix(state.s);
    kinetic = 0.5 * Mq * qd.dot(M * qd);
    gamma = mm.excitation_vector(state.s);
  } else {
    kinetic = 0.5 * Mq * qd.squaredNorm();
    const double m = model.slider.mass;
    kinetic += 0.5 * m * (c.u[n] * c.u[n] + c.u[n + 1] * c.u[n + 1]);
    kinetic += 0.5 * model.slider.rotary_inertia * c.u[n + 2] * c.u[n + 2];
    potential += m * g * c.z[n + 1];
    gamma = mm.excitation_vector(-1.0);
  }
  const double w2 = mm.omega * mm.omega;
  for (int k = 0; k < n; ++k) {
    const double wk2 = w2 * mm.frequency_ratio[static_cast<std::size_t>(k)] *
                       mm.frequency_ratio[static_cast<std::size_t>(k)];
    potential += Mq * (0.5 * wk2 * q[k] * q[k] + gamma[k] * g / L * q[k]);
  }
  if (!model.linear) {
    const Eigen::VectorXd qq = q;
    const double e = qq.dot(mm.stretch_gram * qq);
    potential += Mq * w2 * mm.cubic_scale * 0.25 * e * e;
  }
  return kinetic + potential;
}

}  // namespace slidelab::contact
