#pragma once

#include "contact_core.hpp"

#include <Eigen/Cholesky>

#include <cstdint>
#include <limits>

namespace slidelab::contact::detail {

using ModalMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxModes, kMaxModes>;

/// Per-run constants of the smooth dynamics.
struct Prepared {
  Prepared(const Model& model, double s_glued);

  const Model* model = nullptr;
  int n = 0;
  ModalMatrix gram;
  ModalVector gamma_bare;
  ModalVector gamma_glued;
  ModalVector omega_k;
  GenVector minv;
  Eigen::LLT<Eigen::MatrixXd> glued_llt;

  void free_acceleration(const GenVector& z, const GenVector& u, double base_acc,
                         GenVector& acc) const;
};

bool try_step(const Prepared& prep, Coords& c, double dt, SliderMode mode, double s_prescribed,
              const Drive& drive, const SimOptions& opt, ContactFrame& frame);

void advance(const Prepared& prep, Coords& c, double dt, SliderMode mode, double s_prescribed,
             const Drive& drive, const SimOptions& opt, ContactFrame& frame, int depth,
             std::int64_t& halvings);

void merge_frame(ContactFrame& into, const ContactFrame& f);
ContactFrame empty_frame();

}  // namespace slidelab::contact::detail
