#pragma once

#include "dlt/coupling.hpp"
#include "dlt/quadrature.hpp"

namespace dlt::qdilog {

/// (x; y)_inf = prod_{j>=0} (1 - x y^j), |y| < 1. Truncated when the
/// remaining tail is below rel_tol.
cplx q_pochhammer_inf(cplx x, cplx y, double rel_tol = 1e-15);

/// Theta(z; tau) = sum_n exp(i pi tau n^2 + 2 pi i n z), Im tau > 0.
cplx theta(cplx z, cplx tau, double abs_tol = 1e-15);

/// The defining contour integral
///   phi_b(z) = exp(-(1/4) Int e^{-2izx} / (sinh(xb) sinh(x/b) x) dx)
/// with the singularity at x = 0 kept below the contour. Requires
/// |Im z| < Im c_b. The far field of the contour is placed on whichever
/// side of the real axis damps e^{-2izx}; both choices are homotopic.
cplx eval_integral(const CouplingParams& params, cplx z,
                   const QuadratureSpec& quad,
                   QuadratureStats* stats = nullptr);

/// The q-product representation, valid for Im b^2 > 0:
///   phi_b(z) = (e^{2 pi (z - c_b)/b}; qbar^2)_inf / (e^{2 pi (z + c_b) b}; q^2)_inf.
/// Returns 0 exactly on the zero lattice; throws PoleError on the pole
/// lattice and ModeError when Im b^2 <= 0.
cplx eval_product(const CouplingParams& params, cplx z,
                  double rel_tol = 1e-15);

/// phi_b(z) anywhere off the pole lattice: reduces z into the convergence
/// strip with the shift equations, then delegates to the product (when
/// convergent) or the integral.
cplx eval(const CouplingParams& params, cplx z, const QuadratureSpec& quad,
          QuadratureStats* stats = nullptr);

/// log phi_b(z) up to an irrelevant multiple of 2 pi i. Safe where phi
/// itself would overflow; ratios of phi values exponentiate exactly from
/// differences of these logs. Throws PoleError on both lattices.
cplx eval_log(const CouplingParams& params, cplx z, const QuadratureSpec& quad,
              QuadratureStats* stats = nullptr);

enum class Sector { unit, gaussian, theta_upper, theta_lower };

struct Asymptotic {
  cplx value;
  Sector sector;
};

/// Large-|z| behavior by sector:
///   |arg z| > pi/2 + arg b      -> 1
///   |arg z| < pi/2 - arg b      -> e^{-i pi z^2} zeta_inv
///   |arg z - pi/2| < arg b      -> Theta(i z/b; -1/b^2) / (qbar^2; qbar^2)_inf
///   |arg z + pi/2| < arg b      -> (q^2; q^2)_inf / Theta(i b z; b^2)
/// Throws DomainError if |z| < min_abs or arg z is within angular_tol of a
/// sector boundary.
Asymptotic asymptotic(const CouplingParams& params, cplx z,
                      double min_abs = 4.0, double angular_tol = 1e-6);

/// log(1 + e^w) without overflow, exact up to roundoff.
cplx log1p_exp(cplx w);

}  // namespace dlt::qdilog
