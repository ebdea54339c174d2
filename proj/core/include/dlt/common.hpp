#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace dlt {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr cplx iu{0.0, 1.0};

inline bool is_finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  if (a > pi) a -= 2.0 * pi;
  return a;
}

/// Symmetric relative distance, safe at zero.
inline double rel_diff(const cplx& x, const cplx& y) {
  const double s = std::abs(x) + std::abs(y);
  if (s == 0.0) return 0.0;
  return std::abs(x - y) / s;
}

/// |lhs - rhs| / (|lhs| + |rhs| + floor), the residual used throughout the
/// identity suites.
inline double identity_residual(const cplx& lhs, const cplx& rhs,
                                double floor = 1e-300) {
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + floor);
}

}  // namespace dlt
