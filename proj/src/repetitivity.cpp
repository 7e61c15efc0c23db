#include "flc/repetitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "flc/patches.hpp"
#include "flc/spatial_index.hpp"

namespace flc {

RepetitivityEstimate repetitivity_estimate(const PointSet& ps, double D, int max_anchors) {
  if (D < 1.0) throw std::invalid_argument("repetitivity_estimate: D must be >= 1");
  if (ps.size() < 3) throw std::invalid_argument("repetitivity_estimate: need at least 3 anchors");
  CenterPatches cp = patch_keys(ps, D);
  if (cp.centers.empty()) throw std::runtime_error("window too small for F(D)");

  // Occurrence positions per patch key.
  std::unordered_map<std::string, std::vector<Index>> where;
  for (std::size_t k = 0; k < cp.centers.size(); ++k) where[cp.keys[k]].push_back(cp.centers[k]);

  // Anchors range over admissible centres, so that the anchor's own complete
  // patch is always a candidate recurrence (window truncation would otherwise
  // inflate F near the boundary).
  const Index n = static_cast<Index>(cp.centers.size());
  const long anchors = std::min<long>(n, std::max(3, max_anchors));
  const Index stride = std::max<Index>(1, n / anchors);

  double f_hat = 1.0;
  bool truncated = false;
  long tested = 0;
  for (Index ai = 0; ai < n; ai += stride) {
    const Vec x = ps.point(cp.centers[static_cast<std::size_t>(ai)]);
    ++tested;
    double f_anchor = 0.0;
    for (const auto& [key, occ] : where) {
      double best = std::numeric_limits<double>::infinity();
      for (Index j : occ) best = std::min(best, (ps.point(j) - x).norm());
      f_anchor = std::max(f_anchor, best);
    }
    f_hat = std::max(f_hat, f_anchor);
    if (ps.window.margin(x) < f_anchor) truncated = true;
  }

  RepetitivityEstimate est;
  est.D = D;
  est.F_hat = f_hat;
  est.anchors_tested = tested;
  est.status = (!truncated && stride == 1) ? RepetitivityEstimate::Status::exact_in_window
                                           : RepetitivityEstimate::Status::lower_bound;
  if (ps.size() != n && est.status == RepetitivityEstimate::Status::exact_in_window)
    est.status = RepetitivityEstimate::Status::lower_bound;  // boundary points untested
  return est;
}

RepetitivityBound check_repetitivity_bound(const PointSet& ps, double D, int max_anchors) {
  RepetitivityEstimate est = repetitivity_estimate(ps, D, max_anchors);

  SpatialIndex index(ps);
  std::vector<Index> hits;
  double kappa1 = 0.0;
  const Index stride = std::max<Index>(1, ps.size() / 512);
  for (Index i = 0; i < ps.size(); i += stride) {
    hits.clear();
    index.ball_append(ps.point(i), 1.0, hits);
    kappa1 = std::max(kappa1, static_cast<double>(hits.size()) / ball_volume(ps.dim, 1.0));
  }

  RepetitivityBound out;
  out.kappa1 = kappa1;
  out.F_hat = est.F_hat;
  out.lhs = patch_count(ps, D);
  out.rhs = kappa1 * ball_volume(ps.dim, est.F_hat);
  out.holds = static_cast<double>(out.lhs) <= out.rhs * (1.0 + 1e-12);
  if (!ps.claims_delone) out.note = "not relatively dense";
  return out;
}

}  // namespace flc
