#ifndef FLC_HULL_METRIC_HPP
#define FLC_HULL_METRIC_HPP

#include "flc/point_set.hpp"

namespace flc {

/// Separation threshold of the patch-representative argument:
/// min{1/sqrt(2), r/2, 1/(2R)}.
double epsilon0(double r, double R);

/// rho(D) = D + R + eps + 1/eps.
double rho(double D, double R, double eps);

/// Certified bracket for a metric value; lower <= d <= upper.
struct MetricBracket {
  double lower = 0.0;
  double upper = kMetricCap;
  double width() const { return upper - lower; }
};

/// Bracket for the point-set metric
///   d(xi1, xi2) = min{1/sqrt 2, inf{S > 0 : exists u,v in B_S with
///                  (-u+xi1) and (-v+xi2) agreeing on B_{1/S}}},
/// computed by bisection on S. For each S the existential over (u, v) is
/// decided combinatorially: candidate alignments v - u come from point
/// differences of the two samples, the remaining freedom in u is an exact
/// interval sweep in 1-D and an adaptive cell refinement (down to
/// resolution/8) in 2-D, and matching empty configurations are detected via
/// empty-ball tests. Throws when the windows cannot certify the bracket at
/// the requested resolution.
MetricBracket hull_metric(const PointSet& xi1, const PointSet& xi2, double resolution = 1e-3);

/// d evaluated for the translated pair (alpha_x xi1, alpha_x xi2).
MetricBracket hull_metric_at(const PointSet& xi1, const PointSet& xi2, const Vec& x,
                             double resolution = 1e-3);

/// Bracket for d_D(xi1, xi2) = sup_{x in B_D} d(alpha_x xi1, alpha_x xi2).
///
/// The sup is sampled on a fixed coarse grid (nested across D), on
/// disagreement-witness candidates taken from points near the earliest
/// symmetric-difference witness, and refined locally around the best
/// candidate. The lower bound is certified; the upper bound adds the grid
/// Lipschitz slack. If target >= 0 the search stops early once
/// lower > target (the bracket is then a certificate, not a sup estimate).
MetricBracket orbit_metric(const PointSet& xi1, const PointSet& xi2, double D,
                           double resolution = 1e-3, double target = -1.0);

struct LemmaGeometryResult {
  double d_lower_bound = 0.0;  // certified lower bracket of d(xi1, xi2)
  double bound = 0.0;          // min{1/sqrt 2, r/2, 1/S}
  bool holds = false;
};

/// Checks the lower-bound lemma for two sets sharing the origin that differ
/// inside B_S. Preconditions (0 in both sets, equal r, disagreement within
/// B_S) are verified and violations reported distinctly.
LemmaGeometryResult check_lemma_geometry(const PointSet& xi1, const PointSet& xi2, double S,
                                         double resolution = 1e-3);

namespace detail {
/// Smallest norm over the symmetric difference of the two samples around the
/// origin (up to search_radius); +inf when they agree there.
double first_disagreement_radius(const PointSet& a, const PointSet& b, double search_radius,
                                 double match_eps = 1e-9);
}  // namespace detail

}  // namespace flc

#endif
