#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "dlt/errors.hpp"

namespace dlt::lattice {

/// 2N-periodic positive field chi on the checkerboard sublattice
/// m + n = 1 (mod 2), stored as the zigzag through two adjacent time rows:
/// column m (1..2N) holds chi_{m, t0} when m + t0 is odd and chi_{m, t0 - 1}
/// otherwise. The two rows are interleaved by column parity.
class ZigzagState {
 public:
  ZigzagState(int N, long time_origin, std::vector<double> zigzag);

  int N() const { return N_; }
  long time_origin() const { return t0_; }
  const std::vector<double>& zigzag() const { return v_; }

  /// chi at lattice site (m, n); n must be time_origin or time_origin - 1
  /// with the matching column parity, m is wrapped mod 2N.
  double chi(long m, long n) const;
  /// Row n as (m, chi) pairs with m in 1..2N, N entries.
  std::vector<std::pair<long, double>> row(long n) const;

  bool holds(long m, long n) const;

 private:
  int N_;
  long t0_;
  std::vector<double> v_;
};

/// One time step: chi_{m,n+1} = (1 + chi_{m-1,n})(1 + chi_{m+1,n}) / chi_{m,n-1}
/// on every column of the advancing row; time_origin advances by 1.
ZigzagState step(const ZigzagState& s);

/// The backward step, inverse of step().
ZigzagState step_back(const ZigzagState& s);

/// Light-cone translation chi'_{m,n} = chi_{m-1,n+1}: one step() followed by
/// the index relabeling, keeping time_origin fixed.
ZigzagState lightcone_step(const ZigzagState& s);

/// Inverse of lightcone_step.
ZigzagState lightcone_step_back(const ZigzagState& s);

/// Iterate step(); returns the n_steps + 1 states including the input.
std::vector<ZigzagState> evolve(const ZigzagState& s, int n_steps);

/// Zero-mode recursion zeta_{n+1} = (1 + zeta_n)^2 / zeta_{n-1}.
double zero_mode_step(double z_prev, double z_curr);

/// Symmetric, scale-aware residual of the lattice equation at one site:
/// |chi_- chi_+ - (1+chi_l)(1+chi_r)| / (chi_- chi_+ + (1+chi_l)(1+chi_r)).
double equation_residual(double chi_down, double chi_up, double chi_left,
                         double chi_right);

/// Max equation residual over all interior sites of a trajectory.
double max_trajectory_residual(const std::vector<ZigzagState>& traj);

/// CSV export: header comment carries N and time_origin; columns n,m,chi.
/// The initial state contributes both rows, each later state only its
/// advancing row.
void write_trajectory_csv(std::ostream& os,
                          const std::vector<ZigzagState>& traj);

}  // namespace dlt::lattice
