#ifndef FLC_TYPES_HPP
#define FLC_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace flc {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;

/// Cap of the point-set metric, 1/sqrt(2).
inline constexpr double kMetricCap = 0.70710678118654752440;

inline constexpr double kPi = 3.14159265358979323846;

/// Quantisation grid used for float-keyed patch equality.
inline constexpr double kQuantGrid = 1e-9;

inline std::int64_t quantize(double x) {
  return static_cast<std::int64_t>(std::llround(x / kQuantGrid));
}

/// Volume of the Euclidean ball of radius s in dimension d (d = 1 or 2).
inline double ball_volume(int dim, double s) {
  if (dim == 1) return 2.0 * s;
  if (dim == 2) return kPi * s * s;
  throw std::invalid_argument("ball_volume: only dimensions 1 and 2 are supported");
}

/// Axis-aligned box with closed per-axis intervals.
struct Box {
  Vec lo, hi;

  Box() = default;
  Box(Vec l, Vec h) : lo(std::move(l)), hi(std::move(h)) {}

  static Box interval(double a, double b) {
    Box box;
    box.lo = Vec::Constant(1, a);
    box.hi = Vec::Constant(1, b);
    return box;
  }
  static Box square(double a, double b) {
    Box box;
    box.lo = Vec::Constant(2, a);
    box.hi = Vec::Constant(2, b);
    return box;
  }

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const { return (hi.array() < lo.array()).any(); }

  double volume() const {
    if (empty()) return 0.0;
    return (hi - lo).prod();
  }

  Vec center() const { return 0.5 * (lo + hi); }
  Vec extent() const { return hi - lo; }

  bool contains(const Eigen::Ref<const Vec>& x, double tol = 0.0) const {
    return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
  }
  bool contains(const Box& other, double tol = 0.0) const {
    return (other.lo.array() >= lo.array() - tol).all() &&
           (other.hi.array() <= hi.array() + tol).all();
  }

  Box eroded(double margin) const { return Box(lo.array() + margin, hi.array() - margin); }

  Box intersected(const Box& other) const {
    return Box(lo.cwiseMax(other.lo), hi.cwiseMin(other.hi));
  }

  Box shifted(const Eigen::Ref<const Vec>& t) const { return Box(lo + t, hi + t); }

  /// Largest s such that the closed ball B_s(x) fits inside the box.
  double margin(const Eigen::Ref<const Vec>& x) const {
    return std::min((x - lo).minCoeff(), (hi - x).minCoeff());
  }
};

/// Closed-ball query against a point set.
struct BallQuery {
  Vec center;
  double radius = 0.0;
};

}  // namespace flc

#endif
