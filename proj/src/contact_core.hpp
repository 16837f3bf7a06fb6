#pragma once

#include "slidelab/contact.hpp"

namespace slidelab::contact::detail {

struct Coords {
  GenVector z;  // [q, x_C, y_C, beta]
  GenVector u;  // [dq/dt, dx_C/dt, dy_C/dt, dbeta/dt]
  double t = 0.0;
};

Coords to_coords(const Model& model, const SystemState& state);
SystemState to_state(const Model& model, const Coords& c);

/// Contact quantities at configuration z; rows are the generalised-velocity
/// Jacobians of the normal (opening positive) and tangential relative velocity.
struct ContactRows {
  std::array<double, 4> p{};
  std::array<double, 4> gap{};
  std::array<double, 4> slope{};
  std::array<GenVector, 4> wn;
  std::array<GenVector, 4> wt;
};

double kinematic_position(const Model& model, const GenVector& z, SliderMode mode,
                          double s_prescribed);
void evaluate_contacts(const Model& model, const GenVector& z, double s_kin, ContactRows& out);

}  // namespace slidelab::contact::detail
