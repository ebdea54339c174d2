#include "dlt/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace dlt::lattice {

namespace {

long wrap_index(long m, int twoN) {
  long r = (m - 1) % twoN;
  if (r < 0) r += twoN;
  return r;  // 0-based column for 1-based site m
}

void check_positive(double x, const char* who) {
  if (!std::isfinite(x) || x <= 0.0)
    throw OverflowError(std::string(who) +
                        ": field left the positive range (overflow or "
                        "underflow, not a failure of the equation)");
}

}  // namespace

ZigzagState::ZigzagState(int N, long time_origin, std::vector<double> zigzag)
    : N_(N), t0_(time_origin), v_(std::move(zigzag)) {
  if (N_ < 1) throw DomainError("ZigzagState: N must be >= 1");
  if (v_.size() != std::size_t(2 * N_))
    throw DomainError("ZigzagState: zigzag must have 2N entries");
  for (double x : v_) check_positive(x, "ZigzagState");
}

bool ZigzagState::holds(long m, long n) const {
  if (n != t0_ && n != t0_ - 1) return false;
  const bool odd = ((m + n) % 2 + 2) % 2 == 1;
  if (!odd) return false;
  return n == t0_ ? ((m + t0_) % 2 + 2) % 2 == 1
                  : ((m + t0_) % 2 + 2) % 2 == 0;
}

double ZigzagState::chi(long m, long n) const {
  if (!holds(m, n)) throw DomainError("ZigzagState::chi: site not stored");
  return v_[wrap_index(m, 2 * N_)];
}

std::vector<std::pair<long, double>> ZigzagState::row(long n) const {
  std::vector<std::pair<long, double>> out;
  for (long m = 1; m <= 2 * N_; ++m)
    if (holds(m, n)) out.emplace_back(m, v_[wrap_index(m, 2 * N_)]);
  return out;
}

ZigzagState step(const ZigzagState& s) {
  const int twoN = 2 * s.N();
  const long t0 = s.time_origin();
  std::vector<double> next(s.zigzag());
  // columns with m + (t0+1) odd advance from row t0-1 to row t0+1
  for (long m = 1; m <= twoN; ++m) {
    if (((m + t0) % 2 + 2) % 2 == 0) {
      const double down = s.chi(m, t0 - 1);
      const double left = s.chi(m - 1, t0);
      const double right = s.chi(m + 1, t0);
      const double up = (1.0 + left) * (1.0 + right) / down;
      check_positive(up, "step");
      next[wrap_index(m, twoN)] = up;
    }
  }
  return ZigzagState(s.N(), t0 + 1, std::move(next));
}

ZigzagState step_back(const ZigzagState& s) {
  const int twoN = 2 * s.N();
  const long t0 = s.time_origin();
  std::vector<double> prev(s.zigzag());
  // columns with m + t0 odd retreat from row t0 to row t0-2
  for (long m = 1; m <= twoN; ++m) {
    if (((m + t0) % 2 + 2) % 2 == 1) {
      const double up = s.chi(m, t0);
      const double left = s.chi(m - 1, t0 - 1);
      const double right = s.chi(m + 1, t0 - 1);
      const double down = (1.0 + left) * (1.0 + right) / up;
      check_positive(down, "step_back");
      prev[wrap_index(m, twoN)] = down;
    }
  }
  return ZigzagState(s.N(), t0 - 1, std::move(prev));
}

ZigzagState lightcone_step(const ZigzagState& s) {
  const ZigzagState up = step(s);  // rows t0, t0+1
  const int twoN = 2 * s.N();
  std::vector<double> v(static_cast<std::size_t>(twoN));
  for (long m = 1; m <= twoN; ++m) {
    // chi'_{m,n} = chi_{m-1,n+1} for n in {t0-1, t0}
    const long n = up.holds(m - 1, s.time_origin() + 1) ? s.time_origin() + 1
                                                        : s.time_origin();
    v[std::size_t(m - 1)] = up.chi(m - 1, n);
  }
  return ZigzagState(s.N(), s.time_origin(), std::move(v));
}

ZigzagState lightcone_step_back(const ZigzagState& s) {
  const int twoN = 2 * s.N();
  // undo the relabeling: chi_{m,n} = chi'_{m+1,n-1}
  std::vector<double> v(static_cast<std::size_t>(twoN));
  for (long m = 1; m <= twoN; ++m) {
    const long n = s.holds(m + 1, s.time_origin()) ? s.time_origin()
                                                   : s.time_origin() - 1;
    v[std::size_t(m - 1)] = s.chi(m + 1, n);
  }
  // v holds rows {t0, t0+1}; pull back one step
  const ZigzagState shifted(s.N(), s.time_origin() + 1, std::move(v));
  return step_back(shifted);
}

std::vector<ZigzagState> evolve(const ZigzagState& s, int n_steps) {
  std::vector<ZigzagState> traj;
  traj.reserve(std::size_t(n_steps) + 1);
  traj.push_back(s);
  for (int k = 0; k < n_steps; ++k) traj.push_back(step(traj.back()));
  return traj;
}

double zero_mode_step(double z_prev, double z_curr) {
  if (!(z_prev > 0.0) || !(z_curr > 0.0))
    throw DomainError("zero_mode_step: inputs must be positive");
  return (1.0 + z_curr) * (1.0 + z_curr) / z_prev;
}

double equation_residual(double chi_down, double chi_up, double chi_left,
                         double chi_right) {
  const double lhs = chi_down * chi_up;
  const double rhs = (1.0 + chi_left) * (1.0 + chi_right);
  return std::abs(lhs - rhs) / (lhs + rhs);
}

double max_trajectory_residual(const std::vector<ZigzagState>& traj) {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const ZigzagState& lo = traj[k];
    const ZigzagState& hi = traj[k + 1];
    const long n = lo.time_origin();  // middle row of the triple
    for (long m = 1; m <= 2 * lo.N(); ++m) {
      if (!lo.holds(m, n - 1)) continue;
      const double r = equation_residual(lo.chi(m, n - 1), hi.chi(m, n + 1),
                                         lo.chi(m - 1, n), lo.chi(m + 1, n));
      worst = std::max(worst, r);
    }
  }
  return worst;
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<ZigzagState>& traj) {
  if (traj.empty()) return;
  char buf[64];
  os << "# N=" << traj.front().N()
     << " time_origin=" << traj.front().time_origin() << "\n";
  os << "n,m,chi\n";
  auto emit = [&](long n, const ZigzagState& s) {
    for (const auto& [m, chi] : s.row(n)) {
      std::snprintf(buf, sizeof buf, "%.17g", chi);
      os << n << "," << m << "," << buf << "\n";
    }
  };
  emit(traj.front().time_origin() - 1, traj.front());
  emit(traj.front().time_origin(), traj.front());
  for (std::size_t k = 1; k < traj.size(); ++k)
    emit(traj[k].time_origin(), traj[k]);
}

}  // namespace dlt::lattice
