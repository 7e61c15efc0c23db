#include "flc/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flc {

SpatialIndex::SpatialIndex(const PointSet& ps) : pts_(ps.points), dim_(ps.dim) {
  const Index n = pts_.rows();
  lo_ = ps.window.lo;
  Vec ext = ps.window.extent().cwiseMax(1e-12);

  // Aim at O(1) points per cell; cap the table so sparse huge windows stay cheap.
  double target = std::pow(static_cast<double>(std::max<Index>(n, 1)), 1.0 / dim_);
  double cells_per_axis = std::clamp(target, 1.0, 4096.0);
  h_ = ext.maxCoeff() / cells_per_axis;
  h_ = std::max(h_, 1e-9);

  nx_ = static_cast<Index>(std::floor(ext(0) / h_)) + 1;
  ny_ = dim_ == 2 ? static_cast<Index>(std::floor(ext(1) / h_)) + 1 : 1;

  const Index ncells = nx_ * ny_;
  std::vector<Index> count(ncells + 1, 0);
  std::vector<Index> cell(n);
  for (Index i = 0; i < n; ++i) {
    cell[i] = cell_of(pts_.row(i).transpose());
    ++count[cell[i] + 1];
  }
  for (Index c = 0; c < ncells; ++c) count[c + 1] += count[c];
  starts_ = count;
  ids_.resize(n);
  std::vector<Index> cursor(starts_.begin(), starts_.end() - 1);
  for (Index i = 0; i < n; ++i) ids_[cursor[cell[i]]++] = i;
}

Index SpatialIndex::cell_of(const Vec& x) const {
  Index cx = static_cast<Index>(std::floor((x(0) - lo_(0)) / h_));
  cx = std::clamp<Index>(cx, 0, nx_ - 1);
  if (dim_ == 1) return cx;
  Index cy = static_cast<Index>(std::floor((x(1) - lo_(1)) / h_));
  cy = std::clamp<Index>(cy, 0, ny_ - 1);
  return cy * nx_ + cx;
}

void SpatialIndex::cell_range(double lo, double hi, int axis, Index& c0, Index& c1) const {
  const Index nmax = axis == 0 ? nx_ : ny_;
  c0 = std::clamp<Index>(static_cast<Index>(std::floor((lo - lo_(axis)) / h_)), 0, nmax - 1);
  c1 = std::clamp<Index>(static_cast<Index>(std::floor((hi - lo_(axis)) / h_)), 0, nmax - 1);
}

void SpatialIndex::ball_append(const Vec& center, double radius, std::vector<Index>& out) const {
  if (radius < 0 || pts_.rows() == 0) return;
  const double r2 = radius * radius;
  Index cx0, cx1, cy0 = 0, cy1 = 0;
  cell_range(center(0) - radius, center(0) + radius, 0, cx0, cx1);
  if (dim_ == 2) cell_range(center(1) - radius, center(1) + radius, 1, cy0, cy1);
  const std::size_t first = out.size();
  for (Index cy = cy0; cy <= cy1; ++cy) {
    for (Index cx = cx0; cx <= cx1; ++cx) {
      const Index c = cy * nx_ + cx;
      for (Index k = starts_[c]; k < starts_[c + 1]; ++k) {
        const Index i = ids_[k];
        const double d2 = (pts_.row(i).transpose() - center).squaredNorm();
        if (d2 <= r2) out.push_back(i);
      }
    }
  }
  std::sort(out.begin() + first, out.end());
}

std::vector<Index> SpatialIndex::ball(const BallQuery& q) const {
  if (q.radius < 0) throw std::invalid_argument("ball query: radius must be >= 0");
  std::vector<Index> out;
  ball_append(q.center, q.radius, out);
  return out;
}

double SpatialIndex::nearest_dist(const Vec& x, Index exclude) const {
  const Index n = pts_.rows();
  if (n == 0 || (n == 1 && exclude == 0)) return std::numeric_limits<double>::infinity();
  double radius = h_;
  std::vector<Index> hits;
  for (;;) {
    hits.clear();
    ball_append(x, radius, hits);
    double best = std::numeric_limits<double>::infinity();
    for (Index i : hits) {
      if (i == exclude) continue;
      best = std::min(best, (pts_.row(i).transpose() - x).norm());
    }
    if (best <= radius) return best;
    radius *= 2.0;
    // Window diameter bound: if nothing within it the set is a singleton.
    if (radius > 4.0 * (pts_.colwise().maxCoeff() - pts_.colwise().minCoeff()).norm() + 4.0 * h_) {
      for (Index i = 0; i < n; ++i) {
        if (i == exclude) continue;
        best = std::min(best, (pts_.row(i).transpose() - x).norm());
      }
      return best;
    }
  }
}

double SpatialIndex::min_gap() const {
  const Index n = pts_.rows();
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    best = std::min(best, nearest_dist(pts_.row(i).transpose(), i));
  }
  return best;
}

}  // namespace flc
