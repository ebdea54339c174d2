#pragma once

#include <functional>
#include <vector>

#include "dlt/common.hpp"
#include "dlt/errors.hpp"

namespace dlt {

/// Controls for the adaptive contour quadrature.
///
/// contour_offset and tail_cutoff are consumed by the quantum dilogarithm
/// integral; zero means "derive from the coupling and the analytic tail
/// bound". Tolerances and the subdivision budget apply to every adaptive
/// integral in the library.
struct QuadratureSpec {
  double contour_offset = 0.0;  // delta: indentation below the real axis
  double tail_cutoff = 0.0;     // X: |Re x| truncation of the contour
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  int max_subdivisions = 6000;
  bool extended_precision = false;  // accumulate panel sums in long double
};

struct QuadratureStats {
  double est_error = 0.0;
  std::size_t evals = 0;
  int subdivisions = 0;

  void absorb(const QuadratureStats& o) {
    est_error += o.est_error;
    evals += o.evals;
    subdivisions += o.subdivisions;
  }
};

using ContourFn = std::function<cplx(const cplx&)>;

/// Adaptive Gauss-Kronrod (G7,K15) integral of f along the straight segment
/// from a to b in the complex plane. Globally adaptive: worst panel first.
cplx integrate_segment(const ContourFn& f, cplx a, cplx b,
                       const QuadratureSpec& spec, QuadratureStats* stats);

/// Integral along the polyline through the given nodes (>= 2).
cplx integrate_polyline(const ContourFn& f, const std::vector<cplx>& nodes,
                        const QuadratureSpec& spec, QuadratureStats* stats);

/// Integral along the ray start + t*dir, t >= 0, |dir| = 1. The ray is
/// consumed in hops of doubling length until two consecutive hops contribute
/// below tolerance; max_length (0 = unlimited) truncates with an error if the
/// tail has not converged by then.
cplx integrate_ray(const ContourFn& f, cplx start, cplx dir, double first_hop,
                   const QuadratureSpec& spec, QuadratureStats* stats,
                   double max_length = 0.0);

/// Two-point Richardson extrapolation ladder for a first-order limit
/// f(eps) = f0 + c1*eps + c2*eps^2 + ... evaluated at {eps, eps/2, eps/4}.
inline cplx richardson3(const cplx& f_eps, const cplx& f_half,
                        const cplx& f_quarter) {
  const cplx r01 = 2.0 * f_half - f_eps;
  const cplx r12 = 2.0 * f_quarter - f_half;
  return (4.0 * r12 - r01) / 3.0;
}

}  // namespace dlt
