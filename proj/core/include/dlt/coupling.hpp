#pragma once

#include "dlt/common.hpp"
#include "dlt/errors.hpp"

namespace dlt {

/// The coupling b with every derived constant of the theory.
///
/// The function phi_b is invariant under b -> -b and b -> 1/b, so the
/// constructor normalizes b into the closed first quadrant (Re b > 0,
/// Im b >= 0). c_b = i(b + 1/b)/2, q = exp(i pi b^2), qbar = exp(-i pi/b^2),
/// and the zeta constants are
///   zeta_inv = exp(i pi (1 + 2 c_b^2)/6),
///   zeta_o   = exp(i pi (1 - 4 c_b^2)/12),
///   zeta     = exp(i pi c_b^2 / 3),
/// tied together by zeta_inv = exp(i pi c_b^2) * zeta_o^2.
class CouplingParams {
 public:
  explicit CouplingParams(cplx b);

  cplx b() const { return b_; }
  cplx b_inv() const { return 1.0 / b_; }
  cplx q() const { return q_; }
  cplx qbar() const { return qbar_; }
  cplx c_b() const { return c_b_; }
  cplx zeta_inv() const { return zeta_inv_; }
  cplx zeta_o() const { return zeta_o_; }
  cplx zeta() const { return zeta_; }

  /// b real or a pure phase: phi_b is unitary, (phi_b(z))* = 1/phi_b(z*).
  bool unitary_mode() const { return unitary_; }
  /// Im b^2 > 0: the q-product representation converges.
  bool product_mode() const { return product_; }

  /// Half-width of the convergence strip of the defining integral.
  double strip_half_width() const { return c_b_.imag(); }

  /// Distance from z to the pole lattice -c_b - i(m b + n/b), m,n >= 0.
  double pole_distance(cplx z) const;
  /// Distance from z to the zero lattice +c_b + i(m b + n/b), m,n >= 0.
  double zero_distance(cplx z) const;
  /// Relative pole proximity check used by the evaluators (default 1e-9).
  bool near_pole(cplx z, double rel_tol = 1e-9) const;

 private:
  double lattice_distance(cplx w) const;  // distance to {i(m b + n/b)}
  cplx b_, q_, qbar_, c_b_, zeta_inv_, zeta_o_, zeta_;
  bool unitary_ = false, product_ = false;
};

}  // namespace dlt
