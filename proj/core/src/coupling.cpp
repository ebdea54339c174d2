#include "dlt/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace dlt {

CouplingParams::CouplingParams(cplx b) {
  if (!is_finite(b) || b == 0.0)
    throw DomainError("coupling: b must be finite and nonzero");
  if (b.real() == 0.0)
    throw DomainError("coupling: Re b must be nonzero");
  if (b.real() < 0.0) b = -b;
  if (b.imag() < 0.0) b = 1.0 / b;  // maps the fourth quadrant to the first
  b_ = b;

  const cplx binv = 1.0 / b_;
  c_b_ = iu * (b_ + binv) / 2.0;
  if (!(c_b_.imag() > 0.0)) throw DomainError("coupling: Im c_b must be > 0");

  q_ = std::exp(iu * pi * b_ * b_);
  qbar_ = std::exp(-iu * pi * binv * binv);

  const cplx cb2 = c_b_ * c_b_;
  zeta_inv_ = std::exp(iu * pi * (1.0 + 2.0 * cb2) / 6.0);
  zeta_o_ = std::exp(iu * pi * (1.0 - 4.0 * cb2) / 12.0);
  zeta_ = std::exp(iu * pi * cb2 / 3.0);

  // three-way consistency of the zeta constants
  const cplx alt = std::exp(iu * pi * cb2) * zeta_o_ * zeta_o_;
  if (std::abs(alt - zeta_inv_) > 1e-14)
    throw DomainError("coupling: zeta constants inconsistent");

  unitary_ = std::abs((1.0 - std::abs(b_)) * b_.imag()) < 1e-14;
  product_ = (b_ * b_).imag() > 0.0;
  if (!unitary_ && !product_)
    throw DomainError("coupling: neither unitary nor product mode holds");
}

double CouplingParams::lattice_distance(cplx w) const {
  // Distance from w to {i(m b + n/b) : m, n integers >= 0}. For each m the
  // optimal real n is the projection of the remainder onto the v direction;
  // the two neighbouring integers (clamped to n >= 0) bracket the minimum.
  const cplx u = iu * b_;
  const cplx v = iu / b_;
  double best = std::abs(w);
  const int mmax =
      int(std::ceil(2.0 * std::abs(w) / std::abs(u))) + 2;
  for (int m = 0; m <= mmax; ++m) {
    const cplx rem = w - double(m) * u;
    const double n0 = (rem * std::conj(v)).real() / std::norm(v);
    for (double n : {std::floor(n0), std::ceil(n0), 0.0}) {
      if (n < 0.0) n = 0.0;
      best = std::min(best, std::abs(rem - n * v));
    }
  }
  return best;
}

double CouplingParams::pole_distance(cplx z) const {
  return lattice_distance(-(z + c_b_));
}

double CouplingParams::zero_distance(cplx z) const {
  return lattice_distance(z - c_b_);
}

bool CouplingParams::near_pole(cplx z, double rel_tol) const {
  const double scale = std::max(1.0, std::abs(z));
  return pole_distance(z) < rel_tol * scale;
}

}  // namespace dlt
