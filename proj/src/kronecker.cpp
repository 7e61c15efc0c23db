#include "flc/kronecker.hpp"

#include <cmath>
#include <stdexcept>

namespace flc {

namespace {
double frac(double x) { return x - std::floor(x); }
double circle_dist(double delta) {
  const double f = std::abs(delta - std::round(delta));
  return f;
}
}  // namespace

KroneckerSystem KroneckerSystem::standard(int k) {
  if (k < 1) throw std::invalid_argument("kronecker: torus dimension must be >= 1");
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (k > 8) throw std::invalid_argument("kronecker: torus dimension capped at 8");
  KroneckerSystem sys;
  sys.torus_dim = k;
  sys.rotation_vector.resize(k);
  for (int i = 0; i < k; ++i) sys.rotation_vector(i) = std::sqrt(static_cast<double>(primes[i]));
  return sys;
}

double KroneckerSystem::distance(const Vec& a, const Vec& b) const {
  double d = 0.0;
  for (Index i = 0; i < a.size(); ++i) d = std::max(d, circle_dist(a(i) - b(i)));
  return d;
}

Vec KroneckerSystem::rotate(const Vec& xi, double x) const {
  Vec out(torus_dim);
  for (int i = 0; i < torus_dim; ++i) out(i) = frac(xi(i) + x * rotation_vector(i));
  return out;
}

std::vector<Vec> KroneckerSystem::orbit(int n) const {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n));
  Vec xi = Vec::Zero(torus_dim);
  for (int j = 0; j < n; ++j) {
    out.push_back(xi);
    xi = rotate(xi, 1.0);
  }
  return out;
}

std::vector<long> kronecker_entropy_demo(const KroneckerSystem& sys, double eps,
                                         const std::vector<double>& D_list, int n_points,
                                         int x_samples) {
  if (eps <= 0) throw std::invalid_argument("kronecker demo: eps must be positive");
  if (n_points < 1) throw std::invalid_argument("kronecker demo: need orbit points");
  std::vector<Vec> elems = sys.orbit(n_points);

  std::vector<long> counts;
  for (double D : D_list) {
    // d_D as a sampled sup over translates of both arguments
    auto d_D = [&](const Vec& a, const Vec& b) {
      double best = 0.0;
      for (int s = 0; s < x_samples; ++s) {
        const double x = x_samples > 1 ? -D + 2.0 * D * s / (x_samples - 1) : 0.0;
        best = std::max(best, sys.distance(sys.rotate(a, x), sys.rotate(b, x)));
      }
      return best;
    };
    std::vector<const Vec*> chosen;
    for (const Vec& e : elems) {
      bool ok = true;
      for (const Vec* c : chosen) {
        if (!(d_D(e, *c) > eps)) {
          ok = false;
          break;
        }
      }
      if (ok) chosen.push_back(&e);
    }
    counts.push_back(static_cast<long>(chosen.size()));
  }
  return counts;
}

}  // namespace flc
