#ifndef FLC_SPATIAL_INDEX_HPP
#define FLC_SPATIAL_INDEX_HPP

#include <vector>

#include "flc/point_set.hpp"

namespace flc {

/// Uniform-grid index over a point set window. Queries are output-sensitive
/// and return exactly what a linear scan over the closed ball would.
class SpatialIndex {
 public:
  explicit SpatialIndex(const PointSet& ps);

  /// Indices of points with |p - center| <= radius, ascending.
  std::vector<Index> ball(const BallQuery& q) const;
  void ball_append(const Vec& center, double radius, std::vector<Index>& out) const;

  /// Distance from an arbitrary location to the nearest point (excluding
  /// index `exclude` if >= 0). Infinity for an empty set.
  double nearest_dist(const Vec& x, Index exclude = -1) const;

  /// Smallest pairwise distance of the set (infinity if n < 2).
  double min_gap() const;

  Index size() const { return pts_.rows(); }

 private:
  Index cell_of(const Vec& x) const;
  void cell_range(double lo, double hi, int axis, Index& c0, Index& c1) const;

  Mat pts_;
  Vec lo_;
  double h_ = 1.0;       // cell edge
  Index nx_ = 1, ny_ = 1;
  std::vector<Index> starts_;  // CSR over cells
  std::vector<Index> ids_;
  int dim_ = 1;
};

}  // namespace flc

#endif
