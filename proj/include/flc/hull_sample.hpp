#ifndef FLC_HULL_SAMPLE_HPP
#define FLC_HULL_SAMPLE_HPP

#include <vector>

#include "flc/hull_metric.hpp"
#include "flc/point_set.hpp"

namespace flc {

/// Finite stand-in for the hull: translates of a base sample cropped to a
/// common box around the origin. Every statement computed from it is a
/// finite-sample surrogate for the closure.
struct HullSample {
  PointSet base;
  std::vector<PointSet> elements;
  Mat translation_vectors;  // k x dim
  Box common_box;
};

/// Crops translate(base, v) to [-box_radius, box_radius]^d per vector v.
/// Vectors whose translate cannot fill the box are rejected.
HullSample make_hull_sample(const PointSet& base, const Mat& vectors, double box_radius);

struct SeparatedResult {
  std::vector<int> indices;
  long n_hat = 0;  // greedy maximal size: a certified lower bound for N(D, eps)
};

/// Greedy maximal subset with pairwise d_D lower bracket > eps, scanning the
/// elements in their given (deterministic) order.
SeparatedResult separated_set(const HullSample& hs, double D, double eps,
                              double resolution = 1e-3);

/// One translate per D-patch, anchored so the patch sits at the origin.
/// Representatives are cropped to [-box_radius, box_radius]^d; patch entries
/// whose best centre lacks that margin are skipped (window bookkeeping).
std::vector<PointSet> patch_representatives(const PointSet& ps, double D, double box_radius);

/// Size of a constructed eps/2-ball cover of B_R (cells of edge eps/sqrt(d)).
long cover_count_eps_half(double R, double eps, int dim);

struct TheoremCheckRecord {
  double D = 0;
  double eps = 0;
  double eps0 = 0;
  long n_hat = 0;
  long patch_count_D = 0;
  long m_eps = 0;
  long patch_count_rhoD = 0;
  double min_pairwise_lower = 0;  // over patch representatives at D
  bool separation_applicable = false;  // eps < eps0
  bool separation_check = false;       // reps pairwise d_D >= eps0 - tol
  bool covering_check = false;         // N_hat <= M(eps) * card(p(rho(D)))
};

/// Finite-scale check of both inequalities behind the equality of topological
/// and patch counting entropy: patch representatives are (D, eps)-separated
/// for eps < eps0, and greedy separated counts are covered by
/// M(eps) * card(p(rho(D))).
std::vector<TheoremCheckRecord> check_htop_equals_hpc(const PointSet& ps,
                                                      const std::vector<double>& D_list,
                                                      double eps, double resolution = 1e-3,
                                                      int sample_cap = 48);

}  // namespace flc

#endif
