#include "contact_step.hpp"

#include "slidelab/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slidelab::contact::detail {

Prepared::Prepared(const Model& model, double s_glued) : model(&model) {
  const auto& mm = model.modal;
  n = mm.n_modes;
  gram = mm.stretch_gram;
  gamma_bare = mm.excitation_vector(-1.0);
  omega_k.resize(n);
  for (int k = 0; k < n; ++k) omega_k[k] = mm.omega * mm.frequency_ratio[static_cast<std::size_t>(k)];
  minv.resize(n + 3);
  minv.head(n).setConstant(1.0 / model.modal_mass);
  minv[n] = 1.0 / model.slider.mass;
  minv[n + 1] = 1.0 / model.slider.mass;
  minv[n + 2] = 1.0 / model.slider.rotary_inertia;
  if (model.glued) {
    const Eigen::MatrixXd M = mm.mass_matrix(s_glued);
    glued_llt.compute(M);
    gamma_glued = mm.excitation_vector(s_glued);
  }
  if (!model.glued && (model.slider.mass <= 0.0 || model.slider.rotary_inertia <= 0.0)) {
    throw ConfigError("free slider needs positive mass and rotary inertia");
  }
}

void Prepared::free_acceleration(const GenVector& z, const GenVector& u, double base_acc,
                                 GenVector& acc) const {
  const Model& m = *model;
  const auto& mm = m.modal;
  const double L = m.beam.length;
  const double D = mm.damping;
  const double load = (base_acc + m.gravity) / L;
  acc.resize(n + 3);
  ModalVector beam(n);
  for (int k = 0; k < n; ++k) {
    beam[k] = -2.0 * D * omega_k[k] * u[k] - omega_k[k] * omega_k[k] * z[k];
  }
  if (!m.linear) {
    const ModalVector q = z.head(n);
    const ModalVector gq = gram * q;
    beam -= (mm.omega * mm.omega * mm.cubic_scale * q.dot(gq)) * gq;
  }
  if (m.glued) {
    beam -= gamma_glued * load;
    acc.head(n) = glued_llt.solve(Eigen::VectorXd(beam));
    acc[n] = acc[n + 1] = acc[n + 2] = 0.0;
    return;
  }
  beam -= gamma_bare * load;
  acc.head(n) = beam;
  acc[n] = 0.0;
  acc[n + 1] = -(base_acc + m.gravity);
  acc[n + 2] = 0.0;
}

namespace {

struct Active {
  int idx[4];
  int count = 0;
};

// Exact solve of the small contact problem by trying every combination of
// open / stick / slip(+-) per active contact. Used when Gauss-Seidel stalls,
// typically on two closed contacts of one side whose tangential rows are
// nearly parallel.
bool enumerate_impulses(const double (&G)[8][8], const double (&b)[8], const double (&target)[4],
                        const Active& act, double mu, double (&lam)[8]) {
  const int na = act.count;
  const int nr = 2 * na;
  const int modes = mu > 0.0 ? 4 : 2;  // 0 open, 1 slip+, 2 slip-, 3 stick
  int total = 1;
  for (int a = 0; a < na; ++a) total *= modes;
  double scale = 0.0;
  for (int a = 0; a < nr; ++a) scale = std::max({scale, std::abs(b[a]), std::abs(G[a][a])});
  const double vtol = 1e-9 * std::max(scale, 1e-300);
  for (int code = 0; code < total; ++code) {
    int mode[4];
    int rest = code;
    for (int a = 0; a < na; ++a) {
      mode[a] = rest % modes;
      rest /= modes;
    }
    // Unknown impulses: lambda_N of each non-open contact, lambda_T of each stick.
    int col_n[4], col_t[4];
    int m = 0;
    for (int a = 0; a < na; ++a) col_n[a] = mode[a] == 0 ? -1 : m++;
    for (int a = 0; a < na; ++a) col_t[a] = mode[a] == 3 ? m++ : -1;
    if (m == 0) {
      bool ok = true;
      for (int a = 0; a < na && ok; ++a) ok = b[a] - target[act.idx[a]] >= -vtol;
      if (ok) {
        std::fill(std::begin(lam), std::end(lam), 0.0);
        return true;
      }
      continue;
    }
    // lambda = E x, with E mapping unknowns to the 2 na impulse components.
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(nr, m);
    for (int a = 0; a < na; ++a) {
      if (col_n[a] >= 0) E(a, col_n[a]) = 1.0;
      if (mode[a] == 1) E(na + a, col_n[a]) = -mu;
      if (mode[a] == 2) E(na + a, col_n[a]) = mu;
      if (col_t[a] >= 0) E(na + a, col_t[a]) = 1.0;
    }
    Eigen::MatrixXd Gm(nr, nr);
    Eigen::VectorXd bv(nr);
    for (int i = 0; i < nr; ++i) {
      bv[i] = b[i];
      for (int j = 0; j < nr; ++j) Gm(i, j) = G[i][j];
    }
    Eigen::MatrixXd A(m, m);
    Eigen::VectorXd rhs(m);
    const Eigen::MatrixXd GE = Gm * E;
    int r = 0;
    for (int a = 0; a < na; ++a) {
      if (col_n[a] >= 0) {
        A.row(r) = GE.row(a);
        rhs[r++] = target[act.idx[a]] - b[a];
      }
    }
    for (int a = 0; a < na; ++a) {
      if (col_t[a] >= 0) {
        A.row(r) = GE.row(na + a);
        rhs[r++] = -b[na + a];
      }
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(rhs);
    const Eigen::VectorXd l = E * x;
    const Eigen::VectorXd v = bv + Gm * l;
    const double ltol = 1e-9 * std::max(l.cwiseAbs().maxCoeff(), 1e-300);
    bool ok = true;
    for (int a = 0; a < na && ok; ++a) {
      const double vn = v[a] - target[act.idx[a]];
      const double vt = v[na + a];
      switch (mode[a]) {
        case 0: ok = vn >= -vtol; break;
        case 1: ok = l[a] >= -ltol && (mu == 0.0 || vt >= -vtol); break;
        case 2: ok = l[a] >= -ltol && vt <= vtol; break;
        default: ok = l[a] >= -ltol && std::abs(l[na + a]) <= mu * l[a] + ltol; break;
      }
    }
    if (!ok) continue;
    for (int i = 0; i < nr; ++i) lam[i] = l[i];
    for (int a = 0; a < na; ++a) {
      lam[a] = std::max(lam[a], 0.0);
      lam[na + a] = std::clamp(lam[na + a], -mu * lam[a], mu * lam[a]);
    }
    return true;
  }
  return false;
}

}  // namespace

bool try_step(const Prepared& prep, Coords& c, double dt, SliderMode mode, double s_prescribed,
              const Drive& drive, const SimOptions& opt, ContactFrame& frame) {
  const Model& model = *prep.model;
  const GenVector zm = c.z + 0.5 * dt * c.u;
  const double tm = c.t + 0.5 * dt;
  GenVector acc;
  prep.free_acceleration(zm, c.u, drive.acceleration(tm), acc);
  GenVector u_free = c.u + dt * acc;

  frame = ContactFrame{};
  frame.gap.fill(std::numeric_limits<double>::infinity());
  if (!model.contacts || model.glued) {
    c.u = u_free;
    c.z = zm + 0.5 * dt * c.u;
    c.t += dt;
    return true;
  }

  ContactRows rows;
  const double s_kin = kinematic_position(model, zm, mode, s_prescribed);
  evaluate_contacts(model, zm, s_kin, rows);
  frame.gap = rows.gap;

  // Speculative activation: a contact enters the impulse problem when the
  // motion would close it before the next midpoint. Impulses at one contact
  // can drive another one shut, so the set is grown until it is stable.
  Active act;
  bool in_set[4] = {false, false, false, false};
  double target[4] = {0, 0, 0, 0};
  const double mu = model.slider.friction_coefficient;
  GenVector mw[8];
  double lam[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  GenVector u_new = u_free;
  int na = 0;
  for (int round = 0; round < 4; ++round) {
    bool added = false;
    for (int i = 0; i < 4; ++i) {
      const auto si = static_cast<std::size_t>(i);
      if (in_set[i]) continue;
      const double g = rows.gap[si];
      const double predicted = g + dt * rows.wn[si].dot(u_new);
      if (std::min(g, predicted) > opt.activation_tol) continue;
      in_set[i] = true;
      added = true;
      act.idx[act.count++] = i;
      const double pre = rows.wn[si].dot(c.u);
      target[i] = std::max(-model.slider.restitution * pre, -g / dt);
    }
    if (!added) break;

    // Delassus operator over [N_a..., T_a...].
    na = act.count;
    const GenVector* rowp[8];
    for (int a = 0; a < na; ++a) {
      const auto si = static_cast<std::size_t>(act.idx[a]);
      rowp[a] = &rows.wn[si];
      rowp[na + a] = &rows.wt[si];
    }
    const int nr = 2 * na;
    double G[8][8];
    double b[8];
    for (int a = 0; a < nr; ++a) {
      mw[a] = prep.minv.cwiseProduct(*rowp[a]);
      b[a] = rowp[a]->dot(u_free);
      lam[a] = 0.0;
    }
    for (int a = 0; a < nr; ++a) {
      for (int bb = a; bb < nr; ++bb) {
        G[a][bb] = G[bb][a] = rowp[a]->dot(mw[bb]);
      }
    }
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
      double change = 0.0;
      for (int a = 0; a < na; ++a) {
        double vn = b[a];
        for (int j = 0; j < nr; ++j) vn += G[a][j] * lam[j];
        const double ln = std::max(0.0, lam[a] - (vn - target[act.idx[a]]) / G[a][a]);
        change = std::max(change, std::abs(ln - lam[a]));
        lam[a] = ln;
        const int t = na + a;
        double lt = 0.0;
        if (mu > 0.0) {
          double vt = b[t];
          for (int j = 0; j < nr; ++j) vt += G[t][j] * lam[j];
          lt = std::clamp(lam[t] - vt / G[t][t], -mu * ln, mu * ln);
        }
        change = std::max(change, std::abs(lt - lam[t]));
        lam[t] = lt;
      }
      if (change < opt.pgs_tol) {
        converged = true;
        break;
      }
    }
    if (!converged && !enumerate_impulses(G, b, target, act, mu, lam)) return false;
    u_new = u_free;
    for (int a = 0; a < nr; ++a) u_new += lam[a] * mw[a];
  }

  c.u = u_new;
  c.z = zm + 0.5 * dt * c.u;
  c.t += dt;

  for (int a = 0; a < na; ++a) {
    const auto si = static_cast<std::size_t>(act.idx[a]);
    const double ln = lam[a];
    const double lt = lam[na + a];
    frame.normal_impulse[si] = ln;
    frame.tangential_impulse[si] = lt;
    if (ln <= opt.impulse_tol) continue;
    if (std::abs(lt) < mu * ln - opt.impulse_tol) {
      frame.state[si] = ContactState::stick;
    } else {
      // Friction opposes the slider's relative slip.
      frame.state[si] = lt < 0.0 ? ContactState::slip_right : ContactState::slip_left;
    }
  }
  const auto closed = [&](int i) { return frame.normal_impulse[static_cast<std::size_t>(i)] > opt.impulse_tol; };
  if (closed(0) && closed(2)) frame.diagonal |= 1;
  if (closed(1) && closed(3)) frame.diagonal |= 2;
  return true;
}

void merge_frame(ContactFrame& into, const ContactFrame& f) {
  for (std::size_t i = 0; i < 4; ++i) {
    into.gap[i] = std::min(into.gap[i], f.gap[i]);
    into.normal_impulse[i] += f.normal_impulse[i];
    into.tangential_impulse[i] += f.tangential_impulse[i];
    if (f.state[i] != ContactState::open) into.state[i] = f.state[i];
  }
  into.diagonal |= f.diagonal;
}

ContactFrame empty_frame() {
  ContactFrame f;
  f.gap.fill(std::numeric_limits<double>::infinity());
  return f;
}

void advance(const Prepared& prep, Coords& c, double dt, SliderMode mode, double s_prescribed,
             const Drive& drive, const SimOptions& opt, ContactFrame& frame, int depth,
             std::int64_t& halvings) {
  const Coords saved = c;
  if (try_step(prep, c, dt, mode, s_prescribed, drive, opt, frame)) {
    const int n = prep.n;
    if (!(std::abs(c.z[n + 2]) < 0.25 * std::numbers::pi) || !c.z.allFinite() ||
        !c.u.allFinite()) {
      throw NumericalError(fmt::format(
          "state left the admissible region at t = {} s (beta = {} rad)", c.t, c.z[n + 2]));
    }
    return;
  }
  if (depth >= opt.max_halvings) {
    throw NumericalError(fmt::format(
        "impulse iteration did not converge in {} iterations at t = {} s after {} halvings "
        "(dt = {} s)", opt.max_iter, saved.t, depth, dt));
  }
  ++halvings;
  c = saved;
  ContactFrame f1, f2;
  advance(prep, c, 0.5 * dt, mode, s_prescribed, drive, opt, f1, depth + 1, halvings);
  advance(prep, c, 0.5 * dt, mode, s_prescribed, drive, opt, f2, depth + 1, halvings);
  frame = f1;
  merge_frame(frame, f2);
}

}  // namespace slidelab::contact::detail

namespace slidelab::contact {

std::pair<SystemState, ContactFrame> step(const SystemState& state, double dt, SliderMode mode,
                                          double s_prescribed, const Model& model,
                                          const Drive& drive, const SimOptions& opt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be > 0");
  const detail::Prepared prep(model, s_prescribed);
  detail::Coords c = detail::to_coords(model, state);
  ContactFrame frame;
  std::int64_t halvings = 0;
  detail::advance(prep, c, dt, mode, s_prescribed, drive, opt, frame, 0, halvings);
  return {detail::to_state(model, c), frame};
}

}  // namespace slidelab::contact
