#include "dlt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace dlt {

namespace {

// QUADPACK (G7,K15) nodes and weights on [-1,1]. Even abscissae are the
// embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double t0, t1;   // parameter range in [0,1]
  cplx value;
  double err;
  std::size_t seq;  // insertion order, to keep the heap deterministic
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.seq > b.seq;
  }
};

template <typename Acc>
void gk15(const ContourFn& f, const cplx& a, const cplx& ab, double t0,
          double t1, cplx* out, double* err, std::size_t* evals) {
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  Acc kr_re = 0, kr_im = 0, g_re = 0, g_im = 0;
  for (int i = 0; i < 8; ++i) {
    const int n = (i == 7) ? 1 : 2;
    for (int s = 0; s < n; ++s) {
      const double t = mid + (s == 0 ? half : -half) * kXgk[i];
      const cplx z = a + t * ab;
      const cplx v = f(z);
      kr_re += Acc(kWgk[i]) * v.real();
      kr_im += Acc(kWgk[i]) * v.imag();
      if (i % 2 == 1 || i == 7) {
        const double wg = kWg[i / 2];
        g_re += Acc(wg) * v.real();
        g_im += Acc(wg) * v.imag();
      }
      ++*evals;
    }
  }
  const cplx scale = half * ab;
  const cplx kron{static_cast<double>(kr_re), static_cast<double>(kr_im)};
  const cplx gauss{static_cast<double>(g_re), static_cast<double>(g_im)};
  *out = kron * scale;
  *err = std::abs((kron - gauss) * scale);
}

void eval_panel(const ContourFn& f, const cplx& a, const cplx& ab, double t0,
                double t1, bool extended, cplx* out, double* err,
                std::size_t* evals) {
  if (extended)
    gk15<long double>(f, a, ab, t0, t1, out, err, evals);
  else
    gk15<double>(f, a, ab, t0, t1, out, err, evals);
}

}  // namespace

cplx integrate_segment(const ContourFn& f, cplx a, cplx b,
                       const QuadratureSpec& spec, QuadratureStats* stats) {
  const cplx ab = b - a;
  if (std::abs(ab) == 0.0) return 0.0;

  QuadratureStats local;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  std::size_t seq = 0;

  Panel root{0.0, 1.0, 0.0, 0.0, seq++};
  eval_panel(f, a, ab, root.t0, root.t1, spec.extended_precision, &root.value,
             &root.err, &local.evals);
  cplx total = root.value;
  double total_err = root.err;
  heap.push(root);

  double best_err = total_err;
  int stagnant = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (local.subdivisions >= spec.max_subdivisions)
      throw ConvergenceError("quadrature: subdivision limit reached, error " +
                             std::to_string(total_err));
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;
    const double tm = 0.5 * (worst.t0 + worst.t1);
    for (int half = 0; half < 2; ++half) {
      Panel p{half == 0 ? worst.t0 : tm, half == 0 ? tm : worst.t1, 0.0, 0.0,
              seq++};
      eval_panel(f, a, ab, p.t0, p.t1, spec.extended_precision, &p.value,
                 &p.err, &local.evals);
      total += p.value;
      total_err += p.err;
      heap.push(p);
    }
    ++local.subdivisions;
    // stop at the roundoff floor: error estimates that refuse to improve
    if (total_err < 0.98 * best_err) {
      best_err = total_err;
      stagnant = 0;
    } else if (++stagnant > 300) {
      break;
    }
    if (total_err < 1e-300) break;
    if (worst.t1 - worst.t0 < 1e-14) break;
  }

  local.est_error = total_err;
  if (stats) stats->absorb(local);
  return total;
}

cplx integrate_polyline(const ContourFn& f, const std::vector<cplx>& nodes,
                        const QuadratureSpec& spec, QuadratureStats* stats) {
  if (nodes.size() < 2) throw ConfigError("polyline needs at least two nodes");
  cplx total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    total += integrate_segment(f, nodes[i], nodes[i + 1], spec, stats);
  return total;
}

cplx integrate_ray(const ContourFn& f, cplx start, cplx dir, double first_hop,
                   const QuadratureSpec& spec, QuadratureStats* stats,
                   double max_length) {
  dir /= std::abs(dir);
  cplx total = 0.0;
  cplx p = start;
  double hop = first_hop;
  double travelled = 0.0;
  int quiet = 0;
  for (int k = 0; k < 64; ++k) {
    if (max_length > 0.0 && travelled >= max_length) break;
    if (max_length > 0.0) hop = std::min(hop, max_length - travelled);
    const cplx q = p + hop * dir;
    const cplx piece = integrate_segment(f, p, q, spec, stats);
    total += piece;
    travelled += hop;
    p = q;
    const double gate =
        0.25 * std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    quiet = (std::abs(piece) <= gate) ? quiet + 1 : 0;
    if (quiet >= 2) return total;
    if (hop < 64.0) hop *= 2.0;
  }
  if (max_length > 0.0) return total;  // caller accepted a hard truncation
  throw ConvergenceError("quadrature: ray tail did not converge");
}

}  // namespace dlt
