#include <algorithm>
#include <cmath>

#include "dlt/identities.hpp"

namespace dlt::identities {

namespace {

using qdilog::eval;
using qdilog::eval_log;

QuadratureSpec phi_spec_of(const QuadratureSpec& outer) {
  QuadratureSpec s = outer;
  s.rel_tol = std::min(1e-10, outer.rel_tol);
  s.abs_tol = 1e-13;
  s.contour_offset = 0.0;
  s.tail_cutoff = 0.0;
  return s;
}

// log <x|alpha_s>, assembled from log phi so that tilted contours where the
// two factors grow in opposition stay representable
cplx alpha_log(const CouplingParams& params, double s, cplx x, double eps,
               const QuadratureSpec& spec) {
  const cplx cb = params.c_b();
  return eval_log(params, s - x - cb + iu * eps, spec) -
         eval_log(params, s + x + cb - iu * eps, spec) -
         2.0 * pi * iu * (x + cb) * s;
}

}  // namespace

cplx alpha_component(const CouplingParams& params, double s, cplx x,
                     double eps, const QuadratureSpec& quad) {
  if (s < 0.0) throw DomainError("alpha_component: s must be >= 0");
  if (!(eps > 0.0)) throw DomainError("alpha_component: eps must be > 0");
  return std::exp(alpha_log(params, s, x, eps, phi_spec_of(quad)));
}

cplx q_eigen_transform_raw(const CouplingParams& params, double s, cplx z,
                           const QuadratureSpec& quad, double eps,
                           QuadratureStats* stats) {
  if (s < 0.0) throw DomainError("q_eigen_transform: s must be >= 0");
  // Poles of alpha_s sit just above the real axis at Re x = +-s, so the
  // central segment is lowered by delta. To the left both the Fresnel
  // factor and the numerator asymptotics are Gaussian: a 3 pi/4 tilt damps
  // them. To the right the Fresnel factor cancels against the denominator
  // asymptotics, leaving e^{2 pi i x (z + s + c_b)}: the tail direction is
  // chosen from that exponent inside the open right sector.
  const double delta = 0.1;
  const double X0 = quad.tail_cutoff > 0.0
                        ? quad.tail_cutoff
                        : s + 2.0 + 0.5 * std::abs(z.real());
  QuadratureSpec aspec = quad;
  aspec.tail_cutoff = 0.0;
  const QuadratureSpec spec = phi_spec_of(quad);
  const ContourFn f = [&](const cplx& x) {
    return std::exp(2.0 * pi * iu * x * z - iu * pi * x * x +
                    alpha_log(params, s, x, eps, spec));
  };
  const cplx lambda_right = z + s + params.c_b();
  const double beta = std::arg(params.b());
  double theta_right = pi / 2.0 - std::arg(lambda_right);
  theta_right = std::clamp(theta_right, -pi / 2.0 + beta + 0.15,
                           pi / 2.0 - beta - 0.15);
  if (!(std::sin(std::arg(lambda_right) + theta_right) > 0.05))
    throw ConvergenceError(
        "q_eigen_transform: no convergent right tail direction");

  QuadratureStats local;
  cplx total = integrate_segment(f, cplx(-X0, -delta), cplx(X0, -delta),
                                 aspec, &local);
  total += integrate_ray(f, cplx(X0, -delta), std::polar(1.0, theta_right),
                         1.0, aspec, &local);
  total -= integrate_ray(f, cplx(-X0, -delta),
                         std::polar(1.0, 3.0 * pi / 4.0), 1.0, aspec, &local);
  if (stats) stats->absorb(local);
  return total;
}

cplx q_eigen_transform(const CouplingParams& params, double s, cplx z,
                       const QuadratureSpec& quad, double eps,
                       QuadratureStats* stats) {
  const cplx f0 = q_eigen_transform_raw(params, s, z, quad, eps, stats);
  const cplx f1 = q_eigen_transform_raw(params, s, z, quad, eps / 2.0, stats);
  const cplx f2 = q_eigen_transform_raw(params, s, z, quad, eps / 4.0, stats);
  return richardson3(f0, f1, f2);
}

double check_baxter_n1(const CouplingParams& params, double s, cplx z,
                       const QuadratureSpec& quad, double eps) {
  // L^+(p_z, q_z) acting on q_s(z): e^{2 pi b q_z} shifts z by -i b;
  // e^{2 pi b p_z} is the same shift with multiplier e^{i pi b^2} e^{-2 pi b z}
  // (from [q_z, z] = 1/(2 pi i)); eigenvalue 2 cosh(2 pi b s).
  const cplx b = params.b();
  const cplx q_z = q_eigen_transform(params, s, z, quad, eps);
  const cplx q_dn = q_eigen_transform(params, s, z - iu * b, quad, eps);
  const cplx q_up = q_eigen_transform(params, s, z + iu * b, quad, eps);
  const cplx lhs = std::exp(iu * pi * b * b) *
                       std::exp(-2.0 * pi * b * z) * q_dn +
                   q_dn + q_up;
  const cplx rhs = 2.0 * std::cosh(2.0 * pi * b * s) * q_z;
  return identity_residual(lhs, rhs);
}

cplx bailey_eigenvalue(const CouplingParams& params, cplx u, cplx v, double s,
                       const QuadratureSpec& quad) {
  const QuadratureSpec spec = phi_spec_of(quad);
  auto phi = [&](cplx z) { return eval(params, z, spec); };
  return phi(u + s) * phi(v + s) * phi(u - s) * phi(v - s) *
         std::exp(2.0 * pi * iu * s * s);
}

cplx bailey_matrix_element(const CouplingParams& params, cplx u, cplx v,
                           double s, double x, const QuadratureSpec& quad,
                           double eps) {
  const cplx cb = params.c_b();
  const QuadratureSpec spec = phi_spec_of(quad);
  auto phi = [&](cplx z) { return eval(params, z, spec); };

  // kernel of phi(p+u+v)/phi(p): K(t) = Int e^{2 pi i k t} phi(k+u+v)/phi(k)
  // dk, taken in the closed form (ramanres1) analytically continued; the
  // defining integral converges for Im t < 0, so the y-contour passes above
  // the kernel pole at y = x.
  const cplx k_const_log = eval_log(params, u + v + cb, spec) -
                           std::log(params.zeta_o());
  auto kernel_log = [&](cplx t) {
    return k_const_log + eval_log(params, -t - cb, spec) -
           eval_log(params, u + v - t + cb, spec) + 2.0 * pi * iu * t * cb;
  };

  auto integrand = [&](const cplx& y) {
    return std::exp(kernel_log(x - y) + eval_log(params, u + y, spec) +
                    eval_log(params, v + y, spec) + iu * pi * y * y +
                    alpha_log(params, s, y, eps, spec));
  };

  // triangular bump over y = x, laterally clear of the alpha poles at +-s
  double hb = 0.3;
  for (double p : {s, -s}) hb = std::min(hb, 0.45 * std::abs(x - p));
  if (!(hb > 1e-3))
    throw AdmissibilityError("bailey: sample x collides with the alpha poles");
  const double X0 = std::abs(x) + s + 2.5;
  std::vector<cplx> nodes = {cplx(-X0, 0.0), cplx(x - hb, 0.0), cplx(x, hb),
                             cplx(x + hb, 0.0), cplx(X0, 0.0)};
  std::sort(nodes.begin(), nodes.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });

  cplx total = integrate_polyline(integrand, nodes, quad, nullptr);
  total += integrate_ray(integrand, cplx(X0, 0.0), cplx(1.0, 0.0), 2.0, quad,
                         nullptr);
  total -= integrate_ray(integrand, cplx(-X0, 0.0), cplx(-1.0, 0.0), 2.0,
                         quad, nullptr);

  return std::exp(iu * pi * x * x) * phi(u - x) * phi(v - x) * total;
}

double check_bailey_eigen(const CouplingParams& params, cplx u, cplx v,
                          double s, const std::vector<double>& x_samples,
                          const QuadratureSpec& quad, double eps) {
  double worst = 0.0;
  for (double x : x_samples) {
    auto lhs_at = [&](double e) {
      return bailey_matrix_element(params, u, v, s, x, quad, e);
    };
    auto rhs_at = [&](double e) {
      return bailey_eigenvalue(params, u, v, s, quad) *
             alpha_component(params, s, x, e, quad);
    };
    const cplx lhs = richardson3(lhs_at(eps), lhs_at(eps / 2.0),
                                 lhs_at(eps / 4.0));
    const cplx rhs = richardson3(rhs_at(eps), rhs_at(eps / 2.0),
                                 rhs_at(eps / 4.0));
    worst = std::max(worst, identity_residual(lhs, rhs));
  }
  return worst;
}

}  // namespace dlt::identities
