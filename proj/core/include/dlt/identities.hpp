#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dlt/qdilog.hpp"

namespace dlt::identities {

enum class IdentityId {
  inversion,
  shift_b,
  shift_binv,
  unitarity,
  raman,
  ramanbar,
  fourier_plus,
  fourier_minus,
  fourier_inverse,
  heine,
  euler_heine,
  saalschutz,
  saalschutz_limit,
  psi_consistency,
};

const char* identity_name(IdentityId id);
IdentityId identity_from_name(const std::string& name);
std::vector<IdentityId> all_identities();

/// Parameter values of one identity instance plus the certificate naming
/// the inequality set that was checked when the point was drawn.
struct SamplePoint {
  std::vector<std::pair<std::string, cplx>> values;
  std::string certificate;

  cplx get(const std::string& name) const;
  bool has(const std::string& name) const;
  void set(const std::string& name, cplx v);
};

/// Seeded rejection sampler over a compact admissible box for the identity.
SamplePoint sample_point(IdentityId id, const CouplingParams& params,
                         std::mt19937_64& rng);

/// Psi(u, v, w) = Int phi_b(x+u)/phi_b(x+v) e^{2 pi i w x} dx, contour ends
/// tilted into the sectors +-(|arg x| - pi/2) > arg b as needed.
cplx psi_integral(const CouplingParams& params, cplx u, cplx v, cplx w,
                  const QuadratureSpec& quad, QuadratureStats* stats = nullptr);

enum class PsiVariant { res1, res2 };

/// Closed form of Psi(u,v,w), either
///   res1: phi(u-v+c_b) phi(-w-c_b) / phi(u-v-w+c_b) e^{-2 pi i w(v-c_b)} / zeta_o
///   res2: phi(v+w-u-c_b) / (phi(v-u-c_b) phi(w+c_b)) e^{-2 pi i w(u+c_b)} zeta_o
cplx psi_closed(const CouplingParams& params, cplx u, cplx v, cplx w,
                PsiVariant variant, const QuadratureSpec& quad);

/// Closed forms of Phi_+-(w); the two equivalent expressions per sign are
/// selectable for cross-checks.
cplx fourier_closed(const CouplingParams& params, cplx w, int sign,
                    int form, const QuadratureSpec& quad);
/// Direct quadrature of Int (phi_b(x))^{+-1} e^{2 pi i w x} dx.
cplx fourier_quadrature(const CouplingParams& params, cplx w, int sign,
                        const QuadratureSpec& quad,
                        QuadratureStats* stats = nullptr);
/// Int Phi_+-(y) e^{-2 pi i x y} dy with the pole at y = 0 passed below.
cplx fourier_inverse(const CouplingParams& params, cplx x, int sign,
                     const QuadratureSpec& quad,
                     QuadratureStats* stats = nullptr);

/// Psi_n(a_1..a_n; b_1..b_{n-1}; w) with b_n = i eps internally; the i0
/// prescription is recovered by Richardson extrapolation over
/// {eps, eps/2, eps/4}.
cplx ihg(const CouplingParams& params, const std::vector<cplx>& a,
         const std::vector<cplx>& bvals, cplx w, const QuadratureSpec& quad,
         double eps = 1e-4, QuadratureStats* stats = nullptr);
/// Single-eps evaluation without extrapolation.
cplx ihg_raw(const CouplingParams& params, const std::vector<cplx>& a,
             const std::vector<cplx>& bvals, cplx w,
             const QuadratureSpec& quad, double eps,
             QuadratureStats* stats = nullptr);

/// Residual |LHS - RHS| / (|LHS| + |RHS| + 1e-300) of the identity at the
/// point; deterministic. Throws AdmissibilityError naming the violated
/// inequality.
double verify_identity(IdentityId id, const CouplingParams& params,
                       const SamplePoint& point, const QuadratureSpec& quad,
                       QuadratureStats* stats = nullptr);

/// One-parameter family of generalized eigenvectors: s >= 0 and the
/// finite-eps realization of the +-i0 prescriptions.
struct AlphaVector {
  double s = 0.0;
  double eps = 1e-4;
};

/// <x|alpha_s> = phi(s-x-c_b+i eps)/phi(s+x+c_b-i eps) e^{-2 pi i (x+c_b) s}.
cplx alpha_component(const CouplingParams& params, double s, cplx x,
                     double eps, const QuadratureSpec& quad);

/// q_s(z) = Int e^{2 pi i x z - i pi x^2} <x|alpha_s> dx, entire in z;
/// Richardson-extrapolated in eps.
cplx q_eigen_transform(const CouplingParams& params, double s, cplx z,
                       const QuadratureSpec& quad, double eps = 1e-4,
                       QuadratureStats* stats = nullptr);
cplx q_eigen_transform_raw(const CouplingParams& params, double s, cplx z,
                           const QuadratureSpec& quad, double eps,
                           QuadratureStats* stats = nullptr);

/// Scalar N=1 Baxter check: residual of
///   e^{i pi b^2} e^{-2 pi b z} q_s(z - i b) + q_s(z - i b) + q_s(z + i b)
///     = 2 cosh(2 pi b s) q_s(z).
double check_baxter_n1(const CouplingParams& params, double s, cplx z,
                       const QuadratureSpec& quad, double eps = 1e-4);

/// Eigenvalue factor of Q(u,v) on |alpha_s>.
cplx bailey_eigenvalue(const CouplingParams& params, cplx u, cplx v, double s,
                       const QuadratureSpec& quad);

/// Slow tier: computes <x|Q(u,v)|alpha_s> through the closed-form kernel of
/// phi(p+u+v)/phi(p) and compares against the eigenvalue action at each
/// sample x; returns the max residual.
double check_bailey_eigen(const CouplingParams& params, cplx u, cplx v,
                          double s, const std::vector<double>& x_samples,
                          const QuadratureSpec& quad, double eps = 1e-4);
/// The matrix element itself (for symmetry checks).
cplx bailey_matrix_element(const CouplingParams& params, cplx u, cplx v,
                           double s, double x, const QuadratureSpec& quad,
                           double eps = 1e-4);

/// Machine-readable residual report line (JSON).
struct ResidualRecord {
  IdentityId id;
  SamplePoint point;
  double residual = 0.0;
  QuadratureStats stats;
};
std::string to_json_line(const ResidualRecord& rec);

}  // namespace dlt::identities
