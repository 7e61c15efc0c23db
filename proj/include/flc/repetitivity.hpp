#ifndef FLC_REPETITIVITY_HPP
#define FLC_REPETITIVITY_HPP

#include <string>

#include "flc/point_set.hpp"

namespace flc {

struct RepetitivityEstimate {
  double D = 0.0;
  double F_hat = 1.0;  // smallest F so every D-patch recurs within B_F of each tested anchor
  long anchors_tested = 0;
  enum class Status { exact_in_window, lower_bound } status = Status::lower_bound;
};

/// Estimates the repetitivity function at D by scanning up to max_anchors
/// anchor points (deterministic spread over the sample). Status is
/// exact_in_window only when every point was used as an anchor and no B_F
/// ball was truncated by the window; otherwise the value is a lower bound.
RepetitivityEstimate repetitivity_estimate(const PointSet& ps, double D, int max_anchors = 32);

struct RepetitivityBound {
  long lhs = 0;        // card(p_omega(D))
  double rhs = 0.0;    // kappa1 * |B_{F_hat(D)}|
  bool holds = false;
  double kappa1 = 0.0;
  double F_hat = 0.0;
  std::string note;    // e.g. "not relatively dense"
};

/// The density-times-ball-volume bound on the patch count: kappa1 is the
/// largest observed point count per unit-ball volume.
RepetitivityBound check_repetitivity_bound(const PointSet& ps, double D, int max_anchors = 32);

}  // namespace flc

#endif
