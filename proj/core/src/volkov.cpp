#include "dlt/volkov.hpp"

#include "dlt/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace dlt::volkov {

namespace {

RealFn stencil_derivative(RealFn f) {
  return [f](double x) {
    const double h = 1e-6;
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
           (12 * h);
  };
}

void check_point(const GeneratingPair& p, double um, double up,
                 const char* who) {
  // f'(x) g'(y) < 0 with the orientation f increasing, g decreasing
  const double fp = p.fp(um), gp = p.gp(up);
  if (!(fp > 0.0) || !(gp < 0.0))
    throw AdmissibilityError(std::string(who) +
                             ": f' > 0, g' < 0 fails at (" +
                             std::to_string(um) + ", " + std::to_string(up) +
                             ")");
  if (std::abs(p.f(um) - p.g(up)) < 1e-14)
    throw AdmissibilityError(std::string(who) + ": f(x) != g(y) fails");
}

}  // namespace

void MoebiusMatrix::normalize() {
  const double dt = det();
  if (!(dt > 0.0))
    throw DomainError("MoebiusMatrix: determinant must be positive");
  const double s = std::sqrt(dt);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
}

double MoebiusMatrix::distance(const MoebiusMatrix& other) const {
  auto diff = [&](double sign) {
    return std::max({std::abs(a - sign * other.a), std::abs(b - sign * other.b),
                     std::abs(c - sign * other.c),
                     std::abs(d - sign * other.d)});
  };
  return std::min(diff(1.0), diff(-1.0));
}

GeneratingPair GeneratingPair::from_functions(std::string name, RealFn f,
                                              RealFn g) {
  GeneratingPair p;
  p.name = std::move(name);
  p.fp = stencil_derivative(f);
  p.gp = stencil_derivative(g);
  p.f = std::move(f);
  p.g = std::move(g);
  return p;
}

GeneratingPair GeneratingPair::from_functions(std::string name, RealFn f,
                                              RealFn fp, RealFn g, RealFn gp) {
  GeneratingPair p;
  p.name = std::move(name);
  p.f = std::move(f);
  p.fp = std::move(fp);
  p.g = std::move(g);
  p.gp = std::move(gp);
  return p;
}

GeneratingPair make_pair(const std::string& name) {
  auto diag = [](double lambda, double L) {
    MoebiusMatrix T{std::exp(lambda * L / 2), 0, 0, std::exp(-lambda * L / 2)};
    return T;
  };
  if (name == "exp") {
    auto p = GeneratingPair::from_functions(
        name, [](double x) { return std::exp(x); },
        [](double x) { return std::exp(x); },
        [](double y) { return -std::exp(y); },
        [](double y) { return -std::exp(y); });
    p.L = std::log(2.0);
    p.monodromy_hint = diag(1.0, *p.L);
    return p;
  }
  if (name == "exp-half") {
    auto p = GeneratingPair::from_functions(
        name, [](double x) { return std::exp(0.5 * x); },
        [](double x) { return 0.5 * std::exp(0.5 * x); },
        [](double y) { return -std::exp(0.5 * y); },
        [](double y) { return -0.5 * std::exp(0.5 * y); });
    p.L = 2.0 * std::log(2.0);
    p.monodromy_hint = diag(0.5, *p.L);
    return p;
  }
  if (name == "exp-neg") {
    // Moebius image w -> -1/w of the exp pair
    auto p = GeneratingPair::from_functions(
        name, [](double x) { return -std::exp(-x); },
        [](double x) { return std::exp(-x); },
        [](double y) { return std::exp(-y); },
        [](double y) { return -std::exp(-y); });
    p.L = std::log(2.0);
    p.monodromy_hint = diag(-1.0, *p.L);
    return p;
  }
  if (name == "affine") {
    // Moebius image w -> 1 - 1/w of the exp pair; shared affine monodromy
    auto p = GeneratingPair::from_functions(
        name, [](double x) { return 1.0 - std::exp(-x); },
        [](double x) { return std::exp(-x); },
        [](double y) { return 1.0 + std::exp(-y); },
        [](double y) { return -std::exp(-y); });
    const double L = std::log(2.0);
    p.L = L;
    MoebiusMatrix T{std::exp(-L), 1.0 - std::exp(-L), 0.0, 1.0};
    T.normalize();
    p.monodromy_hint = T;
    return p;
  }
  if (name == "qp") {
    // modulated exponential, hyperbolic monodromy, period L = 4
    const double L = 4.0, amp = 0.1;
    auto mod = [L, amp](double x) {
      return 1.0 + amp * std::sin(2.0 * pi * x / L);
    };
    auto modp = [L, amp](double x) {
      return amp * (2.0 * pi / L) * std::cos(2.0 * pi * x / L);
    };
    auto p = GeneratingPair::from_functions(
        name, [mod](double x) { return std::exp(x) * mod(x); },
        [mod, modp](double x) { return std::exp(x) * (mod(x) + modp(x)); },
        [mod](double y) { return -std::exp(y) * mod(y + 0.7); },
        [mod, modp](double y) {
          return -std::exp(y) * (mod(y + 0.7) + modp(y + 0.7));
        });
    p.L = L;
    p.monodromy_hint = diag(1.0, L);
    return p;
  }
  if (name == "tanh") {
    // bounded pair; not quasi-periodic with a shared monodromy
    return GeneratingPair::from_functions(
        name, [](double x) { return std::tanh(x); },
        [](double x) { return 1.0 / std::pow(std::cosh(x), 2); },
        [](double y) { return -std::tanh(y) - 2.0; },
        [](double y) { return -1.0 / std::pow(std::cosh(y), 2); });
  }
  throw ConfigError("unknown generating pair: " + name);
}

std::vector<std::string> pair_catalog() {
  return {"exp", "exp-half", "exp-neg", "affine", "qp", "tanh"};
}

std::string check_admissible(const GeneratingPair& pair, double extent,
                             int grid, int randoms, unsigned long long seed) {
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double x = -extent + 2.0 * extent * i / (grid - 1);
      const double y = -extent + 2.0 * extent * j / (grid - 1);
      check_point(pair, x, y, "check_admissible");
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-extent, extent);
  for (int k = 0; k < randoms; ++k) check_point(pair, u(rng), u(rng),
                                                "check_admissible");
  return "grid " + std::to_string(grid) + "x" + std::to_string(grid) + " + " +
         std::to_string(randoms) + " random points in [-" +
         std::to_string(extent) + ", " + std::to_string(extent) + "]^2, seed " +
         std::to_string(seed);
}

double liouville_exact(const GeneratingPair& pair, double x, double t) {
  const double um = x - t, up = x + t;
  check_point(pair, um, up, "liouville_exact");
  const double num = -4.0 * pair.fp(um) * pair.gp(up);
  const double den = std::pow(pair.f(um) - pair.g(up), 2);
  const double v = num / den;
  if (!(v > 0.0)) throw AdmissibilityError("liouville_exact: not positive");
  return v;
}

double h_eval(const GeneratingPair& pair, double epsilon, double x, double t) {
  if (!(epsilon > 0.0)) throw DomainError("h_eval: epsilon must be positive");
  const double um = x - t, up = x + t;
  for (double du : {-epsilon, epsilon})
    for (double dv : {-epsilon, epsilon}) check_point(pair, um + du, up + dv,
                                                      "h_eval");
  const double fp1 = pair.f(um + epsilon), fm1 = pair.f(um - epsilon);
  const double gp1 = pair.g(up + epsilon), gm1 = pair.g(up - epsilon);
  const double h =
      -((fp1 - gp1) * (fm1 - gm1)) / ((fp1 - fm1) * (gp1 - gm1));
  if (!(h > 0.0)) throw AdmissibilityError("h_eval: cross-ratio not positive");
  return h;
}

lattice::ZigzagState sample_lattice(const GeneratingPair& pair, double epsilon,
                                    int n_period) {
  if (n_period < 1) throw DomainError("sample_lattice: n_period must be >= 1");
  if (!pair.L)
    throw AdmissibilityError(
        "sample_lattice: pair is not quasi-periodic, periodic sampling "
        "impossible");
  const double ratio = epsilon * n_period / *pair.L;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 ||
      std::round(ratio) < 1.0)
    throw AdmissibilityError(
        "sample_lattice: epsilon * N' must be a positive integer multiple "
        "of L");
  const int N = (n_period % 2 == 0) ? n_period / 2 : n_period;
  std::vector<double> v(static_cast<std::size_t>(2 * N));
  for (long m = 1; m <= 2 * N; ++m) {
    const long n = (m % 2 != 0) ? 0 : -1;
    v[std::size_t(m - 1)] = h_eval(pair, epsilon, m * epsilon, n * epsilon);
  }
  return lattice::ZigzagState(N, 0, std::move(v));
}

lattice::ZigzagState sample_lattice_window(const GeneratingPair& pair,
                                           double epsilon, int n_columns) {
  if (n_columns < 2 || n_columns % 2 != 0)
    throw DomainError("sample_lattice_window: need an even column count");
  const int N = n_columns / 2;
  std::vector<double> v(static_cast<std::size_t>(2 * N));
  for (long m = 1; m <= 2 * N; ++m) {
    const long n = (m % 2 != 0) ? 0 : -1;
    v[std::size_t(m - 1)] = h_eval(pair, epsilon, m * epsilon, n * epsilon);
  }
  return lattice::ZigzagState(N, 0, std::move(v));
}

ProbeResult continuum_limit_probe(const GeneratingPair& pair, double x,
                                  double t,
                                  const std::vector<double>& epsilons) {
  if (epsilons.size() < 2)
    throw DomainError("continuum_limit_probe: need at least two epsilons");
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
    if (!(epsilons[i] > epsilons[i + 1]))
      throw DomainError("continuum_limit_probe: epsilons must decrease");
  ProbeResult res;
  const double target = 1.0 / liouville_exact(pair, x, t);
  for (double eps : epsilons) {
    const double err = std::abs(eps * eps * h_eval(pair, eps, x, t) - target);
    res.errors.emplace_back(eps, err);
  }
  // least squares slope of log err vs log eps
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [eps, err] : res.errors) {
    if (err <= 0.0) continue;
    const double lx = std::log(eps), ly = std::log(err);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw DomainError("continuum_limit_probe: slope undefined");
  res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

MoebiusMatrix monodromy(const GeneratingPair& pair, int n_validate,
                        double tol) {
  if (!pair.L) throw DomainError("monodromy: pair declares no quasi-period L");
  const double L = *pair.L;

  // candidate base points, pick 3 with maximal pairwise f-separation
  std::vector<double> xs;
  for (int i = 0; i <= 24; ++i) xs.push_back(-1.2 + 2.4 * i / 24.0);
  std::array<double, 3> base{};
  double best = -1.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      for (std::size_t k = j + 1; k < xs.size(); ++k) {
        const double fi = pair.f(xs[i]), fj = pair.f(xs[j]), fk = pair.f(xs[k]);
        const double sep = std::min({std::abs(fi - fj), std::abs(fj - fk),
                                     std::abs(fi - fk)});
        if (sep > best) {
          best = sep;
          base = {xs[i], xs[j], xs[k]};
        }
      }
  if (best < 1e-10) throw DomainError("monodromy: degenerate base points");

  // each point yields a row of the homogeneous system for (a,b,c,d):
  //   a f + b - c f F - d F = 0,  F = f(x+L)
  double M[3][4];
  for (int r = 0; r < 3; ++r) {
    const double f = pair.f(base[std::size_t(r)]);
    const double F = pair.f(base[std::size_t(r)] + L);
    M[r][0] = f;
    M[r][1] = 1.0;
    M[r][2] = -f * F;
    M[r][3] = -F;
  }
  // nullspace via 3x3 cofactors of the 3x4 matrix
  auto det3 = [&](int c0, int c1, int c2) {
    return M[0][c0] * (M[1][c1] * M[2][c2] - M[1][c2] * M[2][c1]) -
           M[0][c1] * (M[1][c0] * M[2][c2] - M[1][c2] * M[2][c0]) +
           M[0][c2] * (M[1][c0] * M[2][c1] - M[1][c1] * M[2][c0]);
  };
  MoebiusMatrix T{det3(1, 2, 3), -det3(0, 2, 3), det3(0, 1, 3),
                  -det3(0, 1, 2)};
  const double scale = std::max({std::abs(T.a), std::abs(T.b), std::abs(T.c),
                                 std::abs(T.d)});
  if (scale < 1e-12) throw DomainError("monodromy: singular Moebius system");
  if (T.det() < 0.0) {
    T.a = -T.a; T.b = -T.b; T.c = -T.c; T.d = -T.d;
  }
  if (!(T.det() > 1e-24 * scale * scale))
    throw DomainError("monodromy: singular Moebius system");
  T.normalize();

  auto validate = [&](const RealFn& fn, const char* who) {
    for (int i = 0; i <= n_validate; ++i) {
      const double x = -1.0 + 2.0 * i / n_validate;
      const double lhs = fn(x + L);
      const double rhs = T.apply(fn(x));
      if (std::abs(lhs - rhs) >
          tol * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
        throw DomainError(std::string("monodromy: validation failed on ") +
                          who);
    }
  };
  validate(pair.f, "f");
  validate(pair.g, "g");
  return T;
}

double pde_residual(const GeneratingPair& pair, const GridSpec& grid) {
  const double h = grid.h;
  double worst = 0.0;
  auto phi = [&](double x, double t) {
    return std::log(liouville_exact(pair, x, t));
  };
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nt; ++j) {
      const double x = grid.x0 + (grid.x1 - grid.x0) * i /
                                     std::max(1, grid.nx - 1);
      const double t = grid.t0 + (grid.t1 - grid.t0) * j /
                                     std::max(1, grid.nt - 1);
      const double p0 = phi(x, t);
      const double ptt = (phi(x, t + h) - 2 * p0 + phi(x, t - h)) / (h * h);
      const double pxx = (phi(x + h, t) - 2 * p0 + phi(x - h, t)) / (h * h);
      worst = std::max(worst, std::abs(ptt - pxx + 2.0 * std::exp(p0)));
    }
  return worst;
}

}  // namespace dlt::volkov
