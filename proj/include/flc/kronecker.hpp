#ifndef FLC_KRONECKER_HPP
#define FLC_KRONECKER_HPP

#include <vector>

#include "flc/types.hpp"

namespace flc {

/// Rotation action on the k-torus with the invariant sup-metric
/// max_i circle_dist(a_i, b_i). The rotation vector should have rationally
/// independent components (square roots of distinct primes by default).
struct KroneckerSystem {
  int torus_dim = 1;
  Vec rotation_vector;

  static KroneckerSystem standard(int k);

  /// Invariant metric; computed difference-first so that common shifts cancel.
  double distance(const Vec& a, const Vec& b) const;

  /// beta_x(xi) = xi + x * rotation (mod 1).
  Vec rotate(const Vec& xi, double x) const;

  /// Orbit sample {j * rotation mod 1 : 0 <= j < n}.
  std::vector<Vec> orbit(int n) const;
};

/// Greedy (D, eps)-separated counts of an orbit sample, one per entry of
/// D_list, with d_D evaluated as a max over x_samples translates in B_D.
/// Metric invariance forces the output to be constant across D.
std::vector<long> kronecker_entropy_demo(const KroneckerSystem& sys, double eps,
                                         const std::vector<double>& D_list, int n_points,
                                         int x_samples = 33);

}  // namespace flc

#endif
