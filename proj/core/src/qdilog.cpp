#include "dlt/qdilog.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace dlt::qdilog {

namespace {

constexpr double kPoleRelTol = 1e-9;

double auto_offset(const CouplingParams& p, const QuadratureSpec& quad) {
  // nearest nonzero pole of 1/(sinh(xb) sinh(x/b)) sits at distance
  // pi * min(|b|, 1/|b|) from the origin
  const double dist =
      pi * std::min(std::abs(p.b()), 1.0 / std::abs(p.b()));
  double delta = quad.contour_offset > 0.0 ? quad.contour_offset : 0.1 * dist;
  if (delta >= dist)
    throw ConfigError("quadrature: contour offset reaches a sinh pole");
  return delta;
}

double auto_cutoff(const CouplingParams& p, cplx z,
                   const QuadratureSpec& quad, double delta) {
  // |integrand| <= C e^{(2|Im z| - Re(b+1/b)) |Re x|} / |Re x| for large x
  const double rate = (p.b() + 1.0 / p.b()).real() - 2.0 * std::abs(z.imag());
  if (rate <= 1e-3)
    throw DomainError("eval_integral: z too close to the strip boundary");
  const double amp = 4.0 * std::exp(2.0 * std::abs(z.real()) * delta);
  double X = quad.tail_cutoff > 0.0
                 ? quad.tail_cutoff
                 : std::max(8.0, std::log(amp / quad.abs_tol) / rate);
  if (quad.tail_cutoff > 0.0) {
    const double bound = amp * std::exp(-rate * X) / std::max(X, 1.0);
    if (bound > quad.abs_tol)
      throw ConfigError("quadrature: tail bound at X exceeds abs_tol");
  }
  if (X > 500.0)
    throw ConvergenceError("eval_integral: required cutoff too large");
  return X;
}

}  // namespace

cplx log1p_exp(cplx w) {
  if (w.real() > 36.0) return w + std::exp(-w);
  if (w.real() < -36.0) return std::exp(w);
  return std::log(1.0 + std::exp(w));
}

cplx q_pochhammer_inf(cplx x, cplx y, double rel_tol) {
  const double ay = std::abs(y);
  if (!(ay < 1.0)) throw DomainError("q_pochhammer: |y| must be < 1");
  if (!is_finite(x)) throw OverflowError("q_pochhammer: argument overflow");
  cplx prod = 1.0;
  cplx xy = x;
  for (int j = 0; j < 100000; ++j) {
    prod *= (1.0 - xy);
    xy *= y;
    // tail bound: |log prod_{k>j}(1-x y^k)| <~ |x y^{j+1}| / (1 - |y|)
    if (std::abs(xy) / (1.0 - ay) < 0.5 * rel_tol) return prod;
  }
  throw ConvergenceError("q_pochhammer: no convergence");
}

cplx theta(cplx z, cplx tau, double abs_tol) {
  if (!(tau.imag() > 0.0)) throw DomainError("theta: Im tau must be > 0");
  cplx sum = 1.0;  // n = 0 term
  const int nmin = int(std::ceil(std::abs(z.imag()) / tau.imag())) + 2;
  for (int n = 1; n < 100000; ++n) {
    const cplx tn = std::exp(iu * pi * tau * double(n) * double(n));
    const cplx en = std::exp(2.0 * pi * iu * double(n) * z);
    const cplx tp = tn * en;
    const cplx tm = tn / en;
    sum += tp + tm;
    if (n >= nmin && std::abs(tp) + std::abs(tm) < abs_tol) return sum;
  }
  throw ConvergenceError("theta: no convergence");
}

cplx eval_integral(const CouplingParams& params, cplx z,
                   const QuadratureSpec& quad, QuadratureStats* stats) {
  const double strip = params.strip_half_width();
  if (!(std::abs(z.imag()) < strip))
    throw DomainError("eval_integral: |Im z| must be < Im c_b");

  const cplx b = params.b();
  const double delta = auto_offset(params, quad);
  const double X = auto_cutoff(params, z, quad, delta);

  const auto f = [&](const cplx& x) -> cplx {
    return std::exp(-2.0 * iu * z * x) /
           (std::sinh(x * b) * std::sinh(x / b) * x);
  };

  // The relative error of the result is |dI|/4, so the exponent integral
  // runs under an absolute tolerance derived from rel_tol (its own value can
  // be large through phase winding while the result stays O(1)).
  QuadratureSpec ispec = quad;
  ispec.abs_tol = std::max(quad.abs_tol, 0.25 * quad.rel_tol);
  ispec.rel_tol = 0.0;

  // The singularity at x = 0 stays below the contour. The far field is
  // damped by e^{2 Re z Im x}, so for Re z > 0 it is dropped below the axis
  // with a bump over the origin; near the origin the elevation is capped to
  // keep e^{2 Re z delta} small.
  QuadratureStats local;
  std::vector<cplx> nodes;
  double tail_im;
  if (z.real() > 1.0) {
    const double dip = std::min(delta, 2.0 / std::max(4.0, z.real()));
    const double w = std::min(8.0 * dip, 0.45 * X);
    tail_im = -delta;
    nodes = {cplx(-X, -delta), cplx(-2.0 * w, -delta), cplx(0.0, dip),
             cplx(2.0 * w, -delta), cplx(X, -delta)};
  } else {
    tail_im = delta;
    nodes = {cplx(-X, delta), cplx(0.0, delta), cplx(X, delta)};
  }
  cplx integral = integrate_polyline(f, nodes, ispec, &local);
  // empirical tail validation: keep consuming doubling hops until quiet
  integral += integrate_ray(f, cplx(X, tail_im), cplx(1.0, 0.0), 0.5 * X,
                            ispec, &local);
  integral -= integrate_ray(f, cplx(-X, tail_im), cplx(-1.0, 0.0), 0.5 * X,
                            ispec, &local);

  if (stats) stats->absorb(local);
  return std::exp(-integral / 4.0);
}

namespace {

cplx cexpm1(cplx w) {
  if (std::abs(w) > 0.5) return std::exp(w) - 1.0;
  // Taylor with exact small-|w| behavior
  cplx term = w, sum = w;
  for (int k = 2; k < 24; ++k) {
    term *= w / double(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

struct PochScan {
  cplx value_excluding = 1.0;  // product without the critical factor
  bool critical = false;
  cplx m = 0.0;  // branch-reduced log-argument of the critical factor
};

// prod_j (1 - e^{w0 + j logy}), Re logy < 0, with each factor computed as
// -expm1 of the 2 pi i - reduced exponent; a factor within 1e-8 of zero is
// split off so that zero/pole line crossings stay well conditioned.
PochScan poch_scan(cplx w0, cplx logy, double rel_tol) {
  if (!(logy.real() < -1e-12))
    throw ModeError("q-product does not converge for this coupling");
  PochScan out;
  cplx w = w0;
  for (int j = 0; j < 200000; ++j) {
    const cplx red = w - 2.0 * pi * iu * std::round(w.imag() / (2.0 * pi));
    const cplx factor = -cexpm1(red);
    if (std::abs(red) < 1e-8 && !out.critical) {
      out.critical = true;
      out.m = red;
    } else {
      out.value_excluding *= factor;
    }
    if (!is_finite(out.value_excluding))
      throw OverflowError("q-product overflow");
    w += logy;
    // tail bound |log prod_{k>j}| <~ |e^w| / (1 - |y|)
    if (std::exp(w.real()) / (1.0 - std::exp(logy.real())) < 0.5 * rel_tol)
      break;
  }
  return out;
}

}  // namespace

cplx eval_product(const CouplingParams& params, cplx z, double rel_tol) {
  if (!params.product_mode())
    throw ModeError("eval_product: requires Im b^2 > 0");
  if (params.near_pole(z, kPoleRelTol))
    throw PoleError("eval_product: z on the pole lattice");
  const cplx b = params.b();
  const PochScan num =
      poch_scan(2.0 * pi * (z - params.c_b()) / b, -2.0 * pi * iu / (b * b),
                rel_tol);
  const PochScan den = poch_scan(2.0 * pi * (z + params.c_b()) * b,
                                 2.0 * pi * iu * b * b, rel_tol);
  if (num.critical && den.critical) {
    // a zero line of the numerator crosses a pole line of the denominator;
    // the function is regular there, ratio -> 1/b^2 at the exact crossing
    const cplx ratio =
        (std::abs(num.m) > 1e-13 && std::abs(den.m) > 1e-13)
            ? cexpm1(num.m) / cexpm1(den.m)
            : 1.0 / (b * b);
    return ratio * num.value_excluding / den.value_excluding;
  }
  if (num.critical)  // genuine zero lattice
    return -cexpm1(num.m) * num.value_excluding / den.value_excluding;
  if (den.critical)
    throw PoleError("eval_product: z on the pole lattice");
  return num.value_excluding / den.value_excluding;
}

namespace {

// log phi through shift reduction and the integral; *zero is set at an
// exact zero of a shift prefactor (the zero lattice)
cplx eval_log_impl(const CouplingParams& params, cplx z,
                   const QuadratureSpec& quad, QuadratureStats* stats,
                   bool* zero) {
  *zero = false;
  if (params.near_pole(z, kPoleRelTol))
    throw PoleError("eval: z within pole tolerance of the pole lattice");
  if (params.product_mode()) {
    const double target = std::max(1e-12, 0.25 * quad.rel_tol);
    const cplx v = eval_product(params, z, target);
    if (v == 0.0) {
      *zero = true;
      return 0.0;
    }
    return std::log(v);
  }

  // choose the shift direction: b when |Im b| <= |Im 1/b|, else 1/b
  const cplx s = (std::abs(params.b().imag()) <=
                  std::abs(params.b_inv().imag()))
                     ? params.b()
                     : params.b_inv();
  const double step = s.real();
  cplx log_pref = 0.0;
  cplx w = z;
  int guard = 0;
  while (std::abs(w.imag()) > 0.5 * step + 1e-12) {
    if (++guard > 400) throw ConvergenceError("eval: reduction stalled");
    if (w.imag() > 0.0) {
      // phi(w) = (1 + e^{2 pi s (w - i s/2)}) phi(w - i s)
      log_pref += log1p_exp(2.0 * pi * s * (w - iu * s / 2.0));
      w -= iu * s;
    } else {
      // phi(w) = phi(w + i s) / (1 + e^{2 pi s (w + i s/2)})
      log_pref -= log1p_exp(2.0 * pi * s * (w + iu * s / 2.0));
      w += iu * s;
    }
    if (log_pref.real() == -std::numeric_limits<double>::infinity()) {
      *zero = true;  // a prefactor vanished: z sits on the zero lattice
      return 0.0;
    }
    if (!is_finite(log_pref))
      throw OverflowError("eval: shift prefactor overflow");
  }
  return log_pref + std::log(eval_integral(params, w, quad, stats));
}

}  // namespace

cplx eval_log(const CouplingParams& params, cplx z, const QuadratureSpec& quad,
              QuadratureStats* stats) {
  bool zero = false;
  const cplx lg = eval_log_impl(params, z, quad, stats, &zero);
  if (zero) throw PoleError("eval_log: z on the zero lattice");
  return lg;
}

cplx eval(const CouplingParams& params, cplx z, const QuadratureSpec& quad,
          QuadratureStats* stats) {
  if (params.product_mode()) {
    if (params.near_pole(z, kPoleRelTol))
      throw PoleError("eval: z within pole tolerance of the pole lattice");
    const double target = std::max(1e-12, 0.25 * quad.rel_tol);
    return eval_product(params, z, target);
  }
  bool zero = false;
  const cplx lg = eval_log_impl(params, z, quad, stats, &zero);
  if (zero) return 0.0;
  if (lg.real() > 700.0) throw OverflowError("eval: result overflow");
  if (lg.real() < -700.0) return 0.0;
  return std::exp(lg);
}

Asymptotic asymptotic(const CouplingParams& params, cplx z, double min_abs,
                      double angular_tol) {
  if (std::abs(z) < min_abs)
    throw DomainError("asymptotic: |z| below threshold");
  const double a = std::arg(z);
  const double beta = std::arg(params.b());

  if (std::abs(a) > pi / 2.0 + beta + angular_tol)
    return {cplx(1.0, 0.0), Sector::unit};
  if (std::abs(a) < pi / 2.0 - beta - angular_tol)
    return {std::exp(-iu * pi * z * z) * params.zeta_inv(), Sector::gaussian};
  if (beta > angular_tol && std::abs(a - pi / 2.0) < beta - angular_tol) {
    const cplx qb2 = params.qbar() * params.qbar();
    return {theta(iu * z / params.b(), -1.0 / (params.b() * params.b())) /
                q_pochhammer_inf(qb2, qb2),
            Sector::theta_upper};
  }
  if (beta > angular_tol && std::abs(a + pi / 2.0) < beta - angular_tol) {
    const cplx q2 = params.q() * params.q();
    return {q_pochhammer_inf(q2, q2) /
                theta(iu * params.b() * z, params.b() * params.b()),
            Sector::theta_lower};
  }
  throw DomainError("asymptotic: arg z within tolerance of a sector boundary");
}

}  // namespace dlt::qdilog
