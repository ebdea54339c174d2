#include "dlt/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace dlt::identities {

namespace {

using qdilog::eval;
using qdilog::eval_log;

constexpr double kMargin = 0.12;  // angular margin off sector boundaries

QuadratureSpec inner_spec(const QuadratureSpec& outer) {
  QuadratureSpec s = outer;
  s.rel_tol = std::min(1e-10, outer.rel_tol);
  s.abs_tol = 1e-13;
  s.max_subdivisions = std::max(3000, outer.max_subdivisions / 2);
  s.contour_offset = 0.0;
  s.tail_cutoff = 0.0;
  return s;
}

/// Direction with sin(arg(lambda) + theta) > 0 inside (lo, hi), preferring
/// the steepest-decay angle pi/2 - arg(lambda).
double choose_direction(double lo, double hi, cplx lambda,
                        const std::string& what) {
  if (std::abs(lambda) < 1e-12)
    throw AdmissibilityError(what + ": vanishing decay exponent");
  const double arg_l = std::arg(lambda);
  const double theta_star = pi / 2.0 - arg_l;
  for (int k = -2; k <= 2; ++k) {
    const double t = theta_star + 2.0 * pi * k;
    if (t > lo + 0.02 && t < hi - 0.02) return t;
  }
  // fall back to the widest intersection with a decay arc
  double best_lo = 0, best_hi = -1;
  for (int k = -2; k <= 2; ++k) {
    const double dlo = -arg_l + 2.0 * pi * k;
    const double dhi = dlo + pi;
    const double ilo = std::max(lo, dlo), ihi = std::min(hi, dhi);
    if (ihi - ilo > best_hi - best_lo) {
      best_lo = ilo;
      best_hi = ihi;
    }
  }
  if (best_hi - best_lo < 0.08)
    throw AdmissibilityError(what + ": no convergent contour direction");
  return 0.5 * (best_lo + best_hi);
}

cplx tails_and_center(const ContourFn& f, cplx left_end, cplx right_end,
                      double theta_left, double theta_right, double first_hop,
                      const QuadratureSpec& quad, QuadratureStats* stats) {
  // rays are traversed outward, so the left tail enters with a minus sign
  cplx total = integrate_segment(f, left_end, right_end, quad, stats);
  total += integrate_ray(f, right_end, std::polar(1.0, theta_right),
                         first_hop, quad, stats);
  total -= integrate_ray(f, left_end, std::polar(1.0, theta_left), first_hop,
                         quad, stats);
  return total;
}

bool closed_form_args_ok(const CouplingParams& p,
                         std::initializer_list<cplx> args, double dist) {
  for (cplx z : args)
    if (p.pole_distance(z) < dist || p.zero_distance(z) < dist) return false;
  return true;
}

}  // namespace

const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::inversion: return "inversion";
    case IdentityId::shift_b: return "shift_b";
    case IdentityId::shift_binv: return "shift_binv";
    case IdentityId::unitarity: return "unitarity";
    case IdentityId::raman: return "raman";
    case IdentityId::ramanbar: return "ramanbar";
    case IdentityId::fourier_plus: return "fourier_plus";
    case IdentityId::fourier_minus: return "fourier_minus";
    case IdentityId::fourier_inverse: return "fourier_inverse";
    case IdentityId::heine: return "heine";
    case IdentityId::euler_heine: return "euler_heine";
    case IdentityId::saalschutz: return "saalschutz";
    case IdentityId::saalschutz_limit: return "saalschutz_limit";
    case IdentityId::psi_consistency: return "psi_consistency";
  }
  return "unknown";
}

IdentityId identity_from_name(const std::string& name) {
  for (IdentityId id : all_identities())
    if (name == identity_name(id)) return id;
  throw ConfigError("unknown identity: " + name);
}

std::vector<IdentityId> all_identities() {
  return {IdentityId::inversion,       IdentityId::shift_b,
          IdentityId::shift_binv,      IdentityId::unitarity,
          IdentityId::raman,           IdentityId::ramanbar,
          IdentityId::fourier_plus,    IdentityId::fourier_minus,
          IdentityId::fourier_inverse, IdentityId::heine,
          IdentityId::euler_heine,     IdentityId::saalschutz,
          IdentityId::saalschutz_limit, IdentityId::psi_consistency};
}

cplx SamplePoint::get(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw ConfigError("sample point is missing parameter " + name);
}

bool SamplePoint::has(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return true;
  return false;
}

void SamplePoint::set(const std::string& name, cplx v) {
  for (auto& [k, old] : values)
    if (k == name) {
      old = v;
      return;
    }
  values.emplace_back(name, v);
}

cplx psi_integral(const CouplingParams& params, cplx u, cplx v, cplx w,
                  const QuadratureSpec& quad, QuadratureStats* stats) {
  const double beta = std::arg(params.b());
  for (const auto& [name, zeta] : {std::pair<const char*, cplx>{"w", w},
                                   {"u-v-w", u - v - w},
                                   {"v-u-2c_b", v - u - 2.0 * params.c_b()}}) {
    if (std::abs(zeta) < 1e-12)
      throw AdmissibilityError(std::string("psi_integral: |arg(i(") + name +
                               "))| < pi - arg b (argument vanishes)");
    if (!(std::abs(std::arg(iu * zeta)) < pi - beta - 1e-9))
      throw AdmissibilityError(std::string("psi_integral: |arg(i(") + name +
                               "))| < pi - arg b");
  }
  const double lo = -(u + params.c_b()).imag();
  const double hi = (params.c_b() - v).imag();
  if (!(hi - lo > 0.04))
    throw AdmissibilityError(
        "psi_integral: contour pinched between the pole cones of "
        "phi(x+u) and 1/phi(x+v)");
  const double y0 =
      (lo < -0.02 && hi > 0.02) ? 0.0 : 0.5 * (lo + hi);

  const double theta_left =
      choose_direction(pi / 2.0 + beta + kMargin, 3.0 * pi / 2.0 - beta -
                       kMargin, w, "psi_integral left tail");
  const double theta_right =
      choose_direction(-pi / 2.0 + beta + kMargin, pi / 2.0 - beta - kMargin,
                       w - u + v, "psi_integral right tail");

  const QuadratureSpec phi_spec = inner_spec(quad);
  // the ratio stays moderate where each factor alone would overflow, so the
  // integrand is assembled from log phi values
  const ContourFn f = [&](const cplx& x) {
    return std::exp(eval_log(params, x + u, phi_spec) -
                    eval_log(params, x + v, phi_spec) +
                    2.0 * pi * iu * w * x);
  };
  const double X0 = 3.0 + std::abs(u) + std::abs(v) + std::abs(params.c_b());
  return tails_and_center(f, cplx(-X0, y0), cplx(X0, y0), theta_left,
                          theta_right, 2.0, quad, stats);
}

cplx psi_closed(const CouplingParams& params, cplx u, cplx v, cplx w,
                PsiVariant variant, const QuadratureSpec& quad) {
  const cplx cb = params.c_b();
  const QuadratureSpec phi_spec = inner_spec(quad);
  auto phi = [&](cplx z) { return eval(params, z, phi_spec); };
  if (variant == PsiVariant::res1)
    return phi(u - v + cb) * phi(-w - cb) / phi(u - v - w + cb) *
           std::exp(-2.0 * pi * iu * w * (v - cb)) / params.zeta_o();
  return phi(v + w - u - cb) / (phi(v - u - cb) * phi(w + cb)) *
         std::exp(-2.0 * pi * iu * w * (u + cb)) * params.zeta_o();
}

cplx fourier_closed(const CouplingParams& params, cplx w, int sign, int form,
                    const QuadratureSpec& quad) {
  const cplx cb = params.c_b();
  const QuadratureSpec phi_spec = inner_spec(quad);
  auto phi = [&](cplx z) { return eval(params, z, phi_spec); };
  if (sign > 0) {
    if (form == 0)
      return std::exp(-2.0 * pi * iu * w * cb) * params.zeta_o() /
             phi(w + cb);
    return std::exp(iu * pi * w * w) / params.zeta_o() * phi(-w - cb);
  }
  if (form == 0)
    return std::exp(2.0 * pi * iu * w * cb) / params.zeta_o() * phi(-w - cb);
  return std::exp(-iu * pi * w * w) * params.zeta_o() / phi(w + cb);
}

cplx fourier_quadrature(const CouplingParams& params, cplx w, int sign,
                        const QuadratureSpec& quad, QuadratureStats* stats) {
  if (!(w.imag() < -1e-3))
    throw AdmissibilityError("fourier_quadrature: Im w < 0");
  const double beta = std::arg(params.b());
  const double theta_left = choose_direction(
      pi / 2.0 + beta + kMargin, 3.0 * pi / 2.0 - beta - kMargin, w,
      "fourier left tail");
  const double theta_right =
      sign > 0 ? std::clamp(-pi / 4.0, -pi / 2.0 + beta + kMargin, -kMargin)
               : std::clamp(pi / 4.0, kMargin, pi / 2.0 - beta - kMargin);
  const QuadratureSpec phi_spec = inner_spec(quad);
  const ContourFn f = [&](const cplx& x) {
    return std::exp(double(sign) * eval_log(params, x, phi_spec) +
                    2.0 * pi * iu * w * x);
  };
  const double X0 = 3.0 + std::abs(params.c_b()) + std::abs(w);
  return tails_and_center(f, cplx(-X0, 0.0), cplx(X0, 0.0), theta_left,
                          theta_right, 1.5, quad, stats);
}

cplx fourier_inverse(const CouplingParams& params, cplx x, int sign,
                     const QuadratureSpec& quad, QuadratureStats* stats) {
  const double beta = std::arg(params.b());
  const double delta = 0.1, w0 = 0.5;
  const QuadratureSpec phi_spec = inner_spec(quad);
  const ContourFn f = [&](const cplx& y) {
    return fourier_closed(params, y, sign, 1, phi_spec) *
           std::exp(-2.0 * pi * iu * x * y);
  };
  const double X0 = 3.0 + std::abs(params.c_b()) + std::abs(x);
  // the pole at y = 0 is passed below
  std::vector<cplx> nodes = {cplx(-X0, 0.0), cplx(-2.0 * w0, 0.0),
                             cplx(0.0, -delta), cplx(2.0 * w0, 0.0),
                             cplx(X0, 0.0)};
  cplx total = integrate_polyline(f, nodes, quad, stats);
  double theta_left, theta_right;
  if (sign > 0) {
    theta_left = pi;  // closed form decays like e^{2 pi y Im c_b}
    theta_right = std::clamp(pi / 4.0, kMargin, pi / 2.0 - beta - kMargin);
  } else {
    theta_left = std::clamp(3.0 * pi / 4.0, pi / 2.0 + beta + kMargin,
                            pi - kMargin);
    theta_right = 0.0;
  }
  total += integrate_ray(f, nodes.back(), std::polar(1.0, theta_right), 1.5,
                         quad, stats);
  total -= integrate_ray(f, nodes.front(), std::polar(1.0, theta_left), 1.5,
                         quad, stats);
  return total;
}

cplx ihg_raw(const CouplingParams& params, const std::vector<cplx>& a,
             const std::vector<cplx>& bvals, cplx w,
             const QuadratureSpec& quad, double eps, QuadratureStats* stats) {
  const size_t n = a.size();
  if (n < 1 || bvals.size() + 1 != n)
    throw ConfigError("ihg: need |a| = n >= 1 and |b| = n - 1");
  std::vector<cplx> bfull = bvals;
  bfull.push_back(iu * eps);
  const cplx cb = params.c_b();

  double sum_im = 0.0;
  for (size_t j = 0; j < n; ++j) {
    if (!(bfull[j].imag() > 0.0))
      throw AdmissibilityError("ihg: Im(b_" + std::to_string(j + 1) + ") > 0");
    if (!((cb - a[j]).imag() > 0.0))
      throw AdmissibilityError("ihg: Im(c_b - a_" + std::to_string(j + 1) +
                               ") > 0");
    sum_im += (bfull[j] - a[j] - cb).imag();
  }
  if (!(sum_im < (w - cb).imag()))
    throw AdmissibilityError("ihg: sum Im(b_j - a_j - c_b) < Im(w - c_b)");
  if (!((w - cb).imag() < 0.0))
    throw AdmissibilityError("ihg: Im(w - c_b) < 0");

  double delta = 0.4;
  for (size_t j = 0; j < n; ++j)
    delta = std::min(delta, 0.5 * (cb - a[j]).imag());

  const QuadratureSpec phi_spec = inner_spec(quad);
  const ContourFn f = [&](const cplx& x) {
    cplx lg = 2.0 * pi * iu * x * (w - cb);
    for (size_t j = 0; j < n; ++j)
      lg += eval_log(params, x + bfull[j] - cb, phi_spec) -
            eval_log(params, x + a[j], phi_spec);
    return std::exp(lg);
  };
  double X0 = 4.0 + std::abs(cb);
  for (size_t j = 0; j < n; ++j)
    X0 = std::max(X0, 3.0 + std::abs(a[j].imag()) + std::abs(cb));
  return tails_and_center(f, cplx(-X0, delta), cplx(X0, delta), pi, 0.0, 2.0,
                          quad, stats);
}

cplx ihg(const CouplingParams& params, const std::vector<cplx>& a,
         const std::vector<cplx>& bvals, cplx w, const QuadratureSpec& quad,
         double eps, QuadratureStats* stats) {
  const cplx f0 = ihg_raw(params, a, bvals, w, quad, eps, stats);
  const cplx f1 = ihg_raw(params, a, bvals, w, quad, eps / 2.0, stats);
  const cplx f2 = ihg_raw(params, a, bvals, w, quad, eps / 4.0, stats);
  return richardson3(f0, f1, f2);
}

SamplePoint sample_point(IdentityId id, const CouplingParams& params,
                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const double g0 = params.c_b().imag();
  const cplx cb = params.c_b();

  for (int attempt = 0; attempt < 4000; ++attempt) {
    SamplePoint p;
    switch (id) {
      case IdentityId::inversion:
      case IdentityId::shift_b:
      case IdentityId::shift_binv:
      case IdentityId::unitarity: {
        const cplx z(in(-1.0, 1.0), in(-0.4, 0.4) * g0);
        if (params.pole_distance(z) < 0.05 || params.zero_distance(z) < 0.05)
          continue;
        const cplx s = id == IdentityId::shift_binv ? params.b_inv()
                                                    : params.b();
        if (id == IdentityId::shift_b || id == IdentityId::shift_binv) {
          if (params.pole_distance(z + iu * s / 2.0) < 0.05 ||
              params.pole_distance(z - iu * s / 2.0) < 0.05)
            continue;
        }
        p.values = {{"z", z}};
        p.certificate = "z in the strip |Im z| < 0.4 Im c_b, off the lattices";
        return p;
      }
      case IdentityId::raman: {
        const cplx a(in(-0.4, 0.4), in(0.15, 0.6) * g0);
        const cplx w(in(-0.4, 0.4), in(-a.imag() + 0.1 * g0, 0.6 * g0));
        if (!closed_form_args_ok(params, {a + w - cb, a, w}, 5e-3)) continue;
        p.values = {{"a", a}, {"w", w}};
        p.certificate =
            "Im(c_b-a)>0, eps-Im(a)<Im(w)<Im(c_b), closed-form args off "
            "the lattices";
        return p;
      }
      case IdentityId::ramanbar: {
        const cplx a(in(-0.3, 0.3), in(0.1, 0.4) * g0);
        const cplx w(in(-0.3, 0.3), in(-0.7 * g0, -a.imag() - 0.1 * g0));
        if (!closed_form_args_ok(params, {a, w, a + w + cb}, 5e-3)) continue;
        p.values = {{"a", a}, {"w", w}};
        p.certificate = "-Im(c_b) < Im w < -Im a, closed-form args off "
                        "the lattices";
        return p;
      }
      case IdentityId::fourier_plus:
      case IdentityId::fourier_minus: {
        const cplx w(in(-0.4, 0.4), in(-0.5 * g0, -0.08 * g0));
        if (!closed_form_args_ok(params, {w + cb, -w - cb}, 5e-3)) continue;
        p.values = {{"w", w}};
        p.certificate = "Im w < 0, closed-form args off the lattices";
        return p;
      }
      case IdentityId::fourier_inverse: {
        p.values = {{"x", cplx(in(-0.5, 0.5), 0.0)},
                    {"sign", cplx(unit(rng) < 0.5 ? 1.0 : -1.0, 0.0)}};
        p.certificate = "x real, pole at y=0 passed below";
        return p;
      }
      case IdentityId::heine:
      case IdentityId::euler_heine: {
        const cplx a(in(-0.25, 0.25), in(0.2, 0.45) * g0);
        const cplx b(in(-0.25, 0.25), in(0.2, 0.45) * g0);
        const cplx c(in(-0.25, 0.25), in(0.55, 0.9) * g0);
        const cplx w(in(-0.25, 0.25), in(-0.16, -0.06) * g0);
        // left side window
        const double win =
            (c - a - cb).imag() + (iu * 1e-4 - b - cb).imag();
        if (!(win < (w - cb).imag())) continue;
        if (id == IdentityId::heine) {
          // right side: Psi_2(c-b, w; a+w; b)
          if (!((a + w).imag() > 0.05 * g0)) continue;
          if (!((cb - c + b).imag() > 0.05 * g0)) continue;
          if (!((cb - w).imag() > 0.05 * g0)) continue;
          const double win2 = (a + w - (c - b) - cb).imag() +
                              (iu * 1e-4 - w - cb).imag();
          if (!(win2 < (b - cb).imag() && (b - cb).imag() < 0.0)) continue;
          if (!closed_form_args_ok(params, {c - b, a}, 5e-3)) continue;
        } else {
          // right side: Psi_2(c-a, c-b; c; a+b+w-c)
          const cplx w2 = a + b + w - c;
          if (!(w2.imag() < 0.9 * g0)) continue;
          if (!((cb - c + a).imag() > 0.05 * g0)) continue;
          if (!((cb - c + b).imag() > 0.05 * g0)) continue;
          if (!((w2 - cb).imag() < -0.05 * g0)) continue;
          const double win2 = (c - (c - a) - cb).imag() +
                              (iu * 1e-4 - (c - b) - cb).imag();
          if (!(win2 < (w2 - cb).imag())) continue;
          if (!closed_form_args_ok(params, {c - b, c - a, a + b + w - c, a, b,
                                            w}, 5e-3))
            continue;
        }
        p.values = {{"a", a}, {"b", b}, {"c", c}, {"w", w}};
        p.certificate = "Psi_2 windows of both sides";
        return p;
      }
      case IdentityId::saalschutz:
      case IdentityId::saalschutz_limit: {
        const cplx a(in(-0.2, 0.2), in(0.55, 0.8) * g0);
        const cplx b(in(-0.2, 0.2), in(0.55, 0.8) * g0);
        const cplx c = id == IdentityId::saalschutz
                           ? cplx(in(-0.2, 0.2), in(0.55, 0.8) * g0)
                           : cplx(-30.0, 0.0);
        const cplx d(in(-0.2, 0.2), in(0.06, 0.14) * g0);
        const cplx b2 = a + b + c - d - cb;
        if (!(b2.imag() > 0.1 * g0)) continue;
        if (!((d).imag() > 0.0)) continue;
        if (!closed_form_args_ok(
                params,
                {a + b - d - cb, b + c - d - cb, c + a - d - cb, a, b, c,
                 a - d, b - d, c - d},
                5e-3))
          continue;
        p.values = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
        p.certificate =
            "Im(b_j)>0, Im(c_b-a_j)>0, Saalschuetz window, closed-form "
            "args off the lattices";
        return p;
      }
      case IdentityId::psi_consistency: {
        const cplx u(in(-0.3, 0.3), in(-0.25, 0.25) * g0);
        const cplx v(in(-0.3, 0.3), in(-0.25, 0.25) * g0);
        const cplx w(in(-0.3, 0.3), in(-0.5, -0.1) * g0);
        if (!closed_form_args_ok(params,
                                 {u - v + cb, -w - cb, u - v - w + cb,
                                  v + w - u - cb, v - u - cb, w + cb},
                                 5e-3))
          continue;
        p.values = {{"u", u}, {"v", v}, {"w", w}};
        p.certificate = "closed-form args off the lattices";
        return p;
      }
    }
  }
  throw AdmissibilityError(std::string("sample_point: rejection sampling "
                                       "exhausted for ") +
                           identity_name(id));
}

double verify_identity(IdentityId id, const CouplingParams& params,
                       const SamplePoint& point, const QuadratureSpec& quad,
                       QuadratureStats* stats) {
  const cplx cb = params.c_b();
  const QuadratureSpec phi_spec = inner_spec(quad);
  auto phi = [&](cplx z) { return eval(params, z, phi_spec); };

  switch (id) {
    case IdentityId::inversion: {
      const cplx z = point.get("z");
      const cplx lhs = phi(z) * phi(-z);
      const cplx rhs = std::exp(-iu * pi * z * z) * params.zeta_inv();
      return identity_residual(lhs, rhs);
    }
    case IdentityId::shift_b:
    case IdentityId::shift_binv: {
      const cplx s =
          id == IdentityId::shift_b ? params.b() : params.b_inv();
      const cplx z = point.get("z");
      const cplx lhs = phi(z + iu * s / 2.0);
      const cplx rhs =
          (1.0 + std::exp(2.0 * pi * z * s)) * phi(z - iu * s / 2.0);
      return identity_residual(lhs, rhs);
    }
    case IdentityId::unitarity: {
      if (!params.unitary_mode())
        throw AdmissibilityError("unitarity: (1-|b|) Im b = 0");
      const cplx z = point.get("z");
      const cplx lhs = std::conj(phi(z));
      const cplx rhs = 1.0 / phi(std::conj(z));
      return identity_residual(lhs, rhs);
    }
    case IdentityId::raman: {
      const cplx a = point.get("a");
      const cplx w = point.get("w");
      const cplx lhs = ihg(params, {a}, {}, w, quad, 1e-4, stats);
      const cplx rhs = params.zeta_o() * phi(a + w - cb) / (phi(a) * phi(w));
      return identity_residual(lhs, rhs);
    }
    case IdentityId::ramanbar: {
      const cplx a = point.get("a");
      const cplx w = point.get("w");
      // Int phi(x+a)/phi(x+c_b-i eps) e^{-2 pi i x(w+c_b)} dx, contour below
      // the eps-displaced poles near x = 0
      const double lo_gap = (a + cb).imag();
      if (!(lo_gap > 0.05))
        throw AdmissibilityError("ramanbar: Im(a + c_b) > 0");
      const double delta = std::min(0.3, 0.5 * lo_gap);
      auto at_eps = [&](double eps) {
        const ContourFn f = [&, eps](const cplx& x) {
          return std::exp(eval_log(params, x + a, phi_spec) -
                          eval_log(params, x + cb - iu * eps, phi_spec) -
                          2.0 * pi * iu * x * (w + cb));
        };
        const double X0 = 3.0 + std::abs(a) + std::abs(cb);
        return tails_and_center(f, cplx(-X0, -delta), cplx(X0, -delta), pi,
                                0.0, 2.0, quad, stats);
      };
      const cplx lhs =
          richardson3(at_eps(1e-4), at_eps(5e-5), at_eps(2.5e-5));
      const cplx rhs = phi(a) * phi(w) / (params.zeta_o() * phi(a + w + cb));
      return identity_residual(lhs, rhs);
    }
    case IdentityId::fourier_plus:
    case IdentityId::fourier_minus: {
      const int sign = id == IdentityId::fourier_plus ? 1 : -1;
      const cplx w = point.get("w");
      const cplx lhs = fourier_quadrature(params, w, sign, quad, stats);
      const cplx rhs = fourier_closed(params, w, sign, 0, quad);
      return identity_residual(lhs, rhs);
    }
    case IdentityId::fourier_inverse: {
      const int sign = point.get("sign").real() > 0 ? 1 : -1;
      const cplx x = point.get("x");
      const cplx lhs = fourier_inverse(params, x, sign, quad, stats);
      const cplx p = phi(x);
      const cplx rhs = sign > 0 ? p : 1.0 / p;
      return identity_residual(lhs, rhs);
    }
    case IdentityId::heine: {
      const cplx a = point.get("a"), b = point.get("b"), c = point.get("c"),
                 w = point.get("w");
      const cplx lhs = ihg(params, {a, b}, {c}, w, quad, 1e-4, stats);
      const cplx rhs = phi(c - b) / phi(a) *
                       ihg(params, {c - b, w}, {a + w}, b, quad, 1e-4, stats);
      return identity_residual(lhs, rhs);
    }
    case IdentityId::euler_heine: {
      const cplx a = point.get("a"), b = point.get("b"), c = point.get("c"),
                 w = point.get("w");
      const cplx lhs = ihg(params, {a, b}, {c}, w, quad, 1e-4, stats);
      const cplx rhs = phi(c - b) * phi(c - a) * phi(a + b + w - c) /
                       (phi(a) * phi(b) * phi(w)) *
                       ihg(params, {c - a, c - b}, {c}, a + b + w - c, quad,
                           1e-4, stats);
      return identity_residual(lhs, rhs);
    }
    case IdentityId::saalschutz:
    case IdentityId::saalschutz_limit: {
      const cplx a = point.get("a"), b = point.get("b"), c = point.get("c"),
                 d = point.get("d");
      const cplx lhs = ihg(params, {a, b, c}, {d, a + b + c - d - cb}, -cb,
                           quad, 1e-4, stats);
      cplx rhs = params.zeta_o() * params.zeta_o() * params.zeta_o() *
                 std::exp(iu * pi * d * (2.0 * cb - d));
      if (id == IdentityId::saalschutz)
        rhs *= phi(a + b - d - cb) * phi(b + c - d - cb) * phi(c + a - d - cb) /
               (phi(a) * phi(b) * phi(c) * phi(a - d) * phi(b - d) *
                phi(c - d));
      else
        // the c -> -infinity closed form; c only enters the quadrature side
        rhs *= phi(a + b - d - cb) /
               (phi(a) * phi(b) * phi(a - d) * phi(b - d));
      return identity_residual(lhs, rhs);
    }
    case IdentityId::psi_consistency: {
      const cplx u = point.get("u"), v = point.get("v"), w = point.get("w");
      const cplx lhs = psi_closed(params, u, v, w, PsiVariant::res1, quad);
      const cplx rhs = psi_closed(params, u, v, w, PsiVariant::res2, quad);
      return identity_residual(lhs, rhs);
    }
  }
  throw ConfigError("verify_identity: unknown identity");
}

std::string to_json_line(const ResidualRecord& rec) {
  nlohmann::ordered_json j;
  j["id"] = identity_name(rec.id);
  nlohmann::ordered_json pt;
  for (const auto& [k, v] : rec.point.values)
    pt[k] = {{"re", v.real()}, {"im", v.imag()}};
  j["point"] = pt;
  j["certificate"] = rec.point.certificate;
  j["residual"] = rec.residual;
  j["quadrature"] = {{"est_error", rec.stats.est_error},
                     {"evals", rec.stats.evals},
                     {"subdivisions", rec.stats.subdivisions}};
  return j.dump();
}

}  // namespace dlt::identities
