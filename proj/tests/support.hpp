#pragma once

#include "slidelab/config.hpp"
#include "slidelab/contact.hpp"

namespace slidelab::testing {

inline config::RunConfig table_config() { return config::parse(config::default_document()); }

inline config::RunConfig config_with(const std::vector<std::string>& overrides) {
  config::Json doc = config::default_document();
  for (const auto& o : overrides) config::apply_override(doc, o);
  return config::parse(doc);
}

inline contact::Model table_model(int n_modes) {
  const auto cfg = table_config();
  return config::build_model(cfg, n_modes);
}

/// Simpson's rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

/// Plain bisection on a sign change.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-14) {
  double flo = f(lo);
  while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace slidelab::testing
