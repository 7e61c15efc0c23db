#include "flc/delone.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "flc/parallel.hpp"
#include "flc/spatial_index.hpp"

namespace flc {

namespace {

double hole_scan_1d(const PointSet& ps, const Box& eroded) {
  std::vector<double> xs = sorted_coords(ps);
  const double a = eroded.lo(0), b = eroded.hi(0);
  auto hole_at = [&](double x) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != xs.end()) best = std::min(best, *it - x);
    if (it != xs.begin()) best = std::min(best, x - *(it - 1));
    return best;
  };
  // dist-to-set is piecewise linear: maxima sit at midpoints or eroded endpoints
  double max_hole = std::max(hole_at(a), hole_at(b));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    if (mid >= a && mid <= b) max_hole = std::max(max_hole, hole_at(mid));
  }
  return max_hole;
}

Vec circumcenter(const Vec& p, const Vec& q, const Vec& s, bool& ok) {
  // 2-D circumcenter of three points
  Eigen::Matrix2d A;
  A.row(0) = 2.0 * (q - p).transpose();
  A.row(1) = 2.0 * (s - p).transpose();
  Eigen::Vector2d rhs(q.squaredNorm() - p.squaredNorm(), s.squaredNorm() - p.squaredNorm());
  const double det = A.determinant();
  if (std::abs(det) < 1e-12) {
    ok = false;
    return p;
  }
  ok = true;
  return A.inverse() * rhs;
}

double hole_scan_2d(const PointSet& ps, const SpatialIndex& index, const Box& eroded) {
  const double step = 0.5 * ps.r;
  const Index nx = static_cast<Index>(std::floor((eroded.hi(0) - eroded.lo(0)) / step)) + 1;
  const Index ny = static_cast<Index>(std::floor((eroded.hi(1) - eroded.lo(1)) / step)) + 1;

  struct Cand {
    double hole;
    Vec at;
  };
  std::mutex mu;
  std::vector<double> chunk_max;
  std::vector<Cand> all_cands;
  double max_hole = 0.0;

  const Index total = nx * ny;
  parallel_chunks(total, [&](Index b, Index e) {
    double mh = 0.0;
    std::vector<Cand> cands;
    for (Index idx = b; idx < e; ++idx) {
      const Index iy = idx / nx, ix = idx % nx;
      Vec x(2);
      x << eroded.lo(0) + ix * step, eroded.lo(1) + iy * step;
      if (!eroded.contains(x)) continue;
      const double h = index.nearest_dist(x);
      if (h > mh) mh = h;
      if (h > 0.9 * ps.R) cands.push_back({h, x});
    }
    std::lock_guard<std::mutex> lk(mu);
    chunk_max.push_back(mh);
    all_cands.insert(all_cands.end(), cands.begin(), cands.end());
  });
  for (double m : chunk_max) max_hole = std::max(max_hole, m);

  // Refine the deepest grid holes via the circumcenter of their three nearest
  // points; when the hole is bounded by those points this is the exact local
  // Voronoi vertex.
  std::sort(all_cands.begin(), all_cands.end(), [](const Cand& a, const Cand& b) {
    if (a.hole != b.hole) return a.hole > b.hole;
    if (a.at(0) != b.at(0)) return a.at(0) < b.at(0);
    return a.at(1) < b.at(1);
  });
  const std::size_t refine = std::min<std::size_t>(all_cands.size(), 64);
  for (std::size_t c = 0; c < refine; ++c) {
    Vec x = all_cands[c].at;
    for (int iter = 0; iter < 3; ++iter) {
      std::vector<Index> near;
      double rad = std::max(index.nearest_dist(x) * 1.5, 1e-6);
      while (near.size() < 3) {
        near.clear();
        index.ball_append(x, rad, near);
        rad *= 1.5;
        if (rad > 1e6) break;
      }
      if (near.size() < 3) break;
      std::sort(near.begin(), near.end(), [&](Index i, Index j) {
        return (ps.points.row(i).transpose() - x).squaredNorm() <
               (ps.points.row(j).transpose() - x).squaredNorm();
      });
      bool ok = false;
      Vec cc = circumcenter(ps.point(near[0]), ps.point(near[1]), ps.point(near[2]), ok);
      if (!ok) break;
      if (!eroded.contains(cc)) break;
      const double h = index.nearest_dist(cc);
      if (h <= index.nearest_dist(x)) break;
      x = cc;
    }
    max_hole = std::max(max_hole, index.nearest_dist(x));
  }
  return max_hole;
}

}  // namespace

DeloneReport verify_delone(const PointSet& ps) {
  if (ps.size() == 0) throw std::invalid_argument("verify_delone: empty point set");
  if ((ps.window.extent().array() < 2.0 * ps.R).any())
    throw std::runtime_error("verify_delone: window too small to test denseness");

  DeloneReport rep;
  SpatialIndex index(ps);
  rep.min_gap = index.min_gap();
  rep.uniformly_discrete = rep.min_gap >= 2.0 * ps.r - 1e-9;

  const Box eroded = ps.window.eroded(ps.R);
  rep.max_hole = ps.dim == 1 ? hole_scan_1d(ps, eroded) : hole_scan_2d(ps, index, eroded);
  rep.relatively_dense = rep.max_hole <= ps.R + 1e-9;
  return rep;
}

}  // namespace flc
