#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dlt/errors.hpp"
#include "dlt/lattice.hpp"

namespace dlt::volkov {

/// Element of PSL(2,R): unit determinant, defined up to global sign.
struct MoebiusMatrix {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double apply(double w) const { return (a * w + b) / (c * w + d); }
  double det() const { return a * d - b * c; }
  /// Rescale to det = 1; throws DomainError on det <= 0.
  void normalize();
  /// Max |entrywise difference| against other, minimized over global sign.
  double distance(const MoebiusMatrix& other) const;
};

using RealFn = std::function<double(double)>;

/// The pair (f, g) generating solutions of both the Liouville PDE and its
/// discrete form. Derivatives are analytic when supplied, 5-point stencils
/// with h = 1e-6 otherwise. L and monodromy_hint are present only for
/// quasi-periodic pairs.
struct GeneratingPair {
  std::string name;
  RealFn f, g;
  RealFn fp, gp;  // derivatives
  std::optional<double> L;
  std::optional<MoebiusMatrix> monodromy_hint;

  static GeneratingPair from_functions(std::string name, RealFn f, RealFn g);
  static GeneratingPair from_functions(std::string name, RealFn f, RealFn fp,
                                       RealFn g, RealFn gp);
};

/// Built-in catalog; names: exp, exp-half, exp-neg, affine, qp, tanh.
GeneratingPair make_pair(const std::string& name);
std::vector<std::string> pair_catalog();

/// Sampled admissibility check: f'(x) g'(y) < 0 and f(x) != g(y) on a grid
/// of points in [-extent, extent]^2 plus seeded random points. Returns the
/// description of the check performed; throws AdmissibilityError on failure.
std::string check_admissible(const GeneratingPair& pair, double extent = 3.0,
                             int grid = 13, int randoms = 64,
                             unsigned long long seed = 1);

/// e^{phi(x,t)} = -4 f'(u-) g'(u+) / (f(u-) - g(u+))^2, u_pm = x +- t.
double liouville_exact(const GeneratingPair& pair, double x, double t);

/// Volkov's cross-ratio
///   h_eps = -[(f(u-+e)-g(u++e))(f(u--e)-g(u+-e))] /
///            [(f(u-+e)-f(u--e))(g(u++e)-g(u+-e))].
double h_eval(const GeneratingPair& pair, double epsilon, double x, double t);

/// chi_{m,n} = h_eps(m eps, n eps) on the zigzag rows n in {-1, 0}.
/// When n_period is given, the pair must be quasi-periodic and
/// eps * n_period an integer multiple of L; the sampled state has
/// lattice period 2N = n_period (n_period even) or 2 n_period (odd).
lattice::ZigzagState sample_lattice(const GeneratingPair& pair, double epsilon,
                                    int n_period);
lattice::ZigzagState sample_lattice_window(const GeneratingPair& pair,
                                           double epsilon, int n_columns);

struct ProbeResult {
  std::vector<std::pair<double, double>> errors;  // (epsilon, error)
  double slope = 0.0;  // least-squares log error vs log eps
};

/// error(eps) = |eps^2 h_eps - 1/e^{phi}| at (x,t) for each epsilon.
ProbeResult continuum_limit_probe(const GeneratingPair& pair, double x,
                                  double t,
                                  const std::vector<double>& epsilons);

/// Solve the Moebius relation f(x+L) = T(f(x)) from three base points with
/// maximal f-value separation, validate on n_validate more points (and on g)
/// to tol; throws DomainError on a singular system or validation failure.
MoebiusMatrix monodromy(const GeneratingPair& pair, int n_validate = 10,
                        double tol = 1e-8);

struct GridSpec {
  double x0 = -0.5, x1 = 0.5, t0 = -0.5, t1 = 0.5;
  int nx = 9, nt = 9;
  double h = 1e-3;  // finite-difference step
};

/// Max |phi_tt - phi_xx + 2 e^phi| over the grid, phi = log liouville_exact,
/// second derivatives by central differences with step h.
double pde_residual(const GeneratingPair& pair, const GridSpec& grid);

}  // namespace dlt::volkov
