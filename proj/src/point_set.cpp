#include "flc/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "flc/spatial_index.hpp"

namespace flc {

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

void validate(const PointSet& ps) {
  require(ps.dim == 1 || ps.dim == 2, "point set: dimension must be 1 or 2");
  require(ps.window.dim() == ps.dim, "point set: window dimension mismatch");
  require(!ps.window.empty(), "point set: empty window");
  require(ps.points.cols() == ps.dim || ps.points.rows() == 0, "point set: point dimension mismatch");
  require(ps.r > 0 && ps.R >= ps.r, "point set: need 0 < r <= R");

  const Index n = ps.size();
  for (Index i = 0; i < n; ++i) {
    require(ps.points.row(i).allFinite(), "point set: non-finite coordinate");
    require(ps.window.contains(ps.points.row(i).transpose(), 1e-9),
            "point set: point outside window");
  }
  if (ps.weights.size() > 0) {
    require(ps.weights.size() == n, "point set: weights length mismatch");
  }
  if (!ps.colors.empty()) {
    require(static_cast<Index>(ps.colors.size()) == n, "point set: colors length mismatch");
    for (int c : ps.colors) {
      require(c >= 0 && c < static_cast<int>(ps.color_names.size()),
              "point set: color id out of range");
    }
  }
  if (ps.module_coords.rows() > 0) {
    require(ps.module_coords.rows() == n, "point set: module_coords length mismatch");
    require(ps.module_basis.rows() == ps.dim && ps.module_basis.cols() == ps.module_coords.cols(),
            "point set: module basis shape mismatch");
    for (Index i = 0; i < n; ++i) {
      Vec embedded = ps.module_basis * ps.module_coords.row(i).transpose().cast<double>();
      require((embedded - ps.points.row(i).transpose()).lpNorm<Eigen::Infinity>() <= 1e-12 *
                      std::max(1.0, ps.points.row(i).lpNorm<Eigen::Infinity>()) + 1e-12,
              "point set: module coordinates do not reproduce the float embedding");
    }
  }
  if (n >= 2) {
    SpatialIndex index(ps);
    const double gap = index.min_gap();
    require(gap >= 2.0 * ps.r - 1e-9, "point set: pairwise gap below 2r");
  }
}

std::optional<IVec> express_in_module(const PointSet& ps, const Vec& x, double tol) {
  if (!ps.has_module()) return std::nullopt;
  // Least-squares coefficients, rounded and re-checked.
  Vec coef = ps.module_basis.completeOrthogonalDecomposition().solve(x);
  IVec rounded(coef.size());
  for (Index j = 0; j < coef.size(); ++j) rounded(j) = static_cast<std::int64_t>(std::llround(coef(j)));
  Vec back = ps.module_basis * rounded.cast<double>();
  if ((back - x).lpNorm<Eigen::Infinity>() <= tol) return rounded;
  return std::nullopt;
}

PointSet translate(const PointSet& ps, const Vec& x) {
  if (x.size() != ps.dim) throw std::invalid_argument("translate: vector dimension mismatch");
  PointSet out = ps;
  out.points = ps.points.rowwise() - x.transpose();
  out.window = Box(ps.window.lo - x, ps.window.hi - x);
  if (ps.has_module()) {
    if (auto shift = express_in_module(ps, x, 1e-9)) {
      out.module_coords = ps.module_coords;
      for (Index i = 0; i < out.module_coords.rows(); ++i)
        out.module_coords.row(i) -= shift->transpose();
    } else {
      out.module_coords.resize(0, 0);
      out.module_basis.resize(0, 0);
    }
  }
  std::ostringstream tag;
  tag << ps.provenance << "|translate(" << x.transpose() << ")";
  out.provenance = tag.str();
  return out;
}

PointSet crop(const PointSet& ps, const Box& box) {
  if (box.dim() != ps.dim) throw std::invalid_argument("crop: box dimension mismatch");
  if (!ps.window.contains(box, 1e-9))
    throw std::invalid_argument("crop: box exceeds the window (completeness would be violated)");

  std::vector<Index> keep;
  for (Index i = 0; i < ps.size(); ++i) {
    if (box.contains(ps.points.row(i).transpose())) keep.push_back(i);
  }
  PointSet out;
  out.dim = ps.dim;
  out.r = ps.r;
  out.R = ps.R;
  out.window = box;
  out.claims_delone = ps.claims_delone;
  out.color_names = ps.color_names;
  out.points.resize(static_cast<Index>(keep.size()), ps.dim);
  if (ps.has_module()) {
    out.module_coords.resize(static_cast<Index>(keep.size()), ps.module_coords.cols());
    out.module_basis = ps.module_basis;
  }
  if (ps.has_weights()) out.weights.resize(static_cast<Index>(keep.size()));
  if (ps.has_colors()) out.colors.reserve(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const Index i = keep[k];
    out.points.row(static_cast<Index>(k)) = ps.points.row(i);
    if (ps.has_module()) out.module_coords.row(static_cast<Index>(k)) = ps.module_coords.row(i);
    if (ps.has_weights()) out.weights(static_cast<Index>(k)) = ps.weights(i);
    if (ps.has_colors()) out.colors.push_back(ps.colors[i]);
  }
  std::ostringstream tag;
  tag << ps.provenance << "|crop([" << box.lo.transpose() << "]..[" << box.hi.transpose() << "])";
  out.provenance = tag.str();
  return out;
}

std::vector<double> sorted_coords(const PointSet& ps) {
  if (ps.dim != 1) throw std::invalid_argument("sorted_coords: 1-D sets only");
  std::vector<double> xs(ps.points.data(), ps.points.data() + ps.size());
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace flc
