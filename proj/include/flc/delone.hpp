#ifndef FLC_DELONE_HPP
#define FLC_DELONE_HPP

#include "flc/point_set.hpp"

namespace flc {

struct DeloneReport {
  bool uniformly_discrete = false;
  bool relatively_dense = false;
  double min_gap = 0.0;
  double max_hole = 0.0;  // largest empty-ball radius found, center in the R-eroded window
};

/// Checks uniform discreteness (min pairwise gap >= 2r) and relative denseness
/// (every closed R-ball centred in the R-eroded window meets the set).
///
/// 1-D denseness is exact via a gap scan. In 2-D the eroded window is scanned
/// on a grid of step <= r/2 and the deepest holes are refined through
/// circumcentres of nearby point triples (Voronoi-vertex candidates). The 2-D
/// test is one-sided: it can miss holes below the scan resolution but never
/// reports a spurious one.
DeloneReport verify_delone(const PointSet& ps);

}  // namespace flc

#endif
