#ifndef FLC_POINT_SET_HPP
#define FLC_POINT_SET_HPP

#include <optional>
#include <string>
#include <vector>

#include "flc/types.hpp"

namespace flc {

/// Finite sample of a (possibly weighted/coloured) point set in R^d, d = 1 or 2.
///
/// The window is the box in which the sample is complete: every point of the
/// underlying infinite set that falls inside the window is present. r and R are
/// the declared packing and covering radii of the underlying set.
///
/// Point sets whose points live in a finitely generated module carry exact
/// integer coordinates (`module_coords`) with respect to `module_basis`
/// (dim x rank); the float rows of `points` are the numeric embedding. Patch
/// comparison then works on exact integers instead of quantised floats.
struct PointSet {
  int dim = 1;
  Mat points;           // n x dim, one point per row
  IMat module_coords;   // n x rank, or 0x0 when absent
  Mat module_basis;     // dim x rank, or 0x0
  CVec weights;         // size n, or 0 when absent (implicit weight 1)
  std::vector<int> colors;               // size n, or empty
  std::vector<std::string> color_names;  // alphabet for `colors`
  double r = 0.5;
  double R = 0.5;
  Box window;
  std::string provenance;
  bool claims_delone = false;

  Index size() const { return points.rows(); }
  bool has_module() const { return module_coords.rows() == points.rows() && module_coords.cols() > 0; }
  bool has_weights() const { return weights.size() == points.rows() && weights.size() > 0; }
  bool has_colors() const { return static_cast<Index>(colors.size()) == points.rows() && !colors.empty(); }
  Vec point(Index i) const { return points.row(i).transpose(); }
  Complex weight(Index i) const { return has_weights() ? weights(i) : Complex(1.0, 0.0); }
};

/// Checks the structural invariants (points inside window, pairwise gaps
/// >= 2r, module embedding consistent, aligned optional fields); throws
/// std::invalid_argument on the first violation.
void validate(const PointSet& ps);

/// The translation action: points and window are replaced by -x + (.).
/// Exact module coordinates survive when x itself lies in the module.
PointSet translate(const PointSet& ps, const Vec& x);

/// Restricts to a sub-box of the window; the result's window is `box`.
PointSet crop(const PointSet& ps, const Box& box);

/// Integer module coordinates of an arbitrary vector, if it lies in the
/// module spanned by ps.module_basis (within tol).
std::optional<IVec> express_in_module(const PointSet& ps, const Vec& x, double tol = 1e-9);

/// Coordinates sorted ascending; 1-D sets only.
std::vector<double> sorted_coords(const PointSet& ps);

}  // namespace flc

#endif
