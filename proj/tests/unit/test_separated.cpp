#include <doctest.h>

#include <cmath>
#include <random>

#include "flc/generators.hpp"
#include "flc/hull_sample.hpp"
#include "flc/kronecker.hpp"
#include "flc/patches.hpp"

using namespace flc;

TEST_CASE("separated: single element") {
  PointSet z = lattice(Mat::Identity(1, 1), Box::interval(-100, 100));
  Mat v = Mat::Zero(1, 1);
  HullSample hs = make_hull_sample(z, v, 40.0);
  REQUIRE(hs.elements.size() == 1);
  SeparatedResult res = separated_set(hs, 5.0, 0.2);
  CHECK(res.n_hat == 1);
}

TEST_CASE("separated: lattice translates stabilise independently of D") {
  PointSet z = lattice(Mat::Identity(1, 1), Box::interval(-100, 100));
  z.R = 0.5;
  Mat v(8, 1);
  for (int j = 0; j < 8; ++j) v(j, 0) = j / 8.0;  // orbit modulo the period
  HullSample hs = make_hull_sample(z, v, 40.0);
  REQUIRE(hs.elements.size() == 8);
  long first = -1;
  for (double D : {2.0, 5.0, 9.0}) {
    SeparatedResult res = separated_set(hs, D, 0.2);
    if (first < 0) first = res.n_hat;
    CHECK(res.n_hat == first);  // periodic orbit: D cannot matter
  }
  // d(Z - a, Z - b) = circledist(a, b)/2; only the half-period translate
  // clears eps = 0.2
  CHECK(first == 2);
}

TEST_CASE("separated: representatives make N_hat at least the patch count") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-2500, 2500));
  const double D = 10.0, eps = 0.2;
  const double box_radius = D + 2.0 * fib.R + 1.0 / eps + 6.0;

  std::vector<PointSet> reps = patch_representatives(fib, D, box_radius);
  const long n_patches = patch_count(fib, D);
  REQUIRE(static_cast<long>(reps.size()) == n_patches);

  HullSample hs;
  hs.base = fib;
  hs.elements = reps;
  const Index stride = std::max<Index>(1, fib.size() / 24);
  for (Index i = 0; i < fib.size(); i += stride) {
    PointSet shifted = translate(fib, fib.point(i));
    Box want = Box::interval(-box_radius, box_radius);
    if (!shifted.window.contains(want, 1e-9)) continue;
    hs.elements.push_back(crop(shifted, want));
  }
  SeparatedResult res = separated_set(hs, D, eps);
  CHECK(res.n_hat >= n_patches);
  for (long i = 0; i < n_patches; ++i) CHECK(res.indices[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("theorem check: lattice is trivial") {
  PointSet z = lattice(Mat::Identity(1, 1), Box::interval(-300, 300));
  auto recs = check_htop_equals_hpc(z, {3.0, 6.0}, 0.9 * epsilon0(z.r, z.R));
  for (const auto& r : recs) {
    CHECK(r.patch_count_D == 1);
    CHECK(r.separation_applicable);
    CHECK(r.separation_check);
    CHECK(r.covering_check);
    CHECK(r.n_hat >= 1);
  }
}

TEST_CASE("theorem check: fibonacci passes both directions") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-2500, 2500));
  const double e0 = epsilon0(fib.r, fib.R);
  auto recs = check_htop_equals_hpc(fib, {4.0, 8.0}, 0.9 * e0);
  for (const auto& r : recs) {
    CHECK(r.separation_applicable);
    CHECK(r.separation_check);
    CHECK(r.min_pairwise_lower >= r.eps0 - 1e-3);
    CHECK(r.covering_check);
    CHECK(r.n_hat <= r.m_eps * r.patch_count_rhoD);
    CHECK(r.patch_count_D >= 2);
  }
}

TEST_CASE("theorem check: eps above eps0 disables the separation guarantee") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-1500, 1500));
  auto recs = check_htop_equals_hpc(fib, {4.0}, 1.2 * epsilon0(fib.r, fib.R));
  REQUIRE(recs.size() == 1);
  CHECK_FALSE(recs[0].separation_applicable);
  CHECK(recs[0].covering_check);
}

TEST_CASE("kronecker: invariant metric makes N_hat D-independent") {
  KroneckerSystem sys = KroneckerSystem::standard(1);
  auto counts = kronecker_entropy_demo(sys, 0.1, {1.0, 10.0, 100.0}, 200);
  REQUIRE(counts.size() == 3);
  CHECK(counts[0] == counts[1]);
  CHECK(counts[1] == counts[2]);
  // circle packing: n points pairwise > 0.1 apart need n * 0.1 < 1
  CHECK(counts[0] <= 9);
  CHECK(counts[0] >= 2);
}

TEST_CASE("kronecker: eps beyond the diameter keeps one element") {
  KroneckerSystem sys = KroneckerSystem::standard(1);
  auto counts = kronecker_entropy_demo(sys, 0.6, {1.0, 10.0}, 64);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 1);
}

TEST_CASE("kronecker: metric invariance") {
  KroneckerSystem sys = KroneckerSystem::standard(2);
  Vec a(2), b(2);
  a << 0.125, 0.625;
  b << 0.75, 0.0625;
  // dyadic data and shifts: translation cancels exactly in floating point
  for (double t : {0.25, 0.0625, 0.5}) {
    Vec at = a.array() + t, bt = b.array() + t;
    for (Index i = 0; i < 2; ++i) {
      at(i) -= std::floor(at(i));
      bt(i) -= std::floor(bt(i));
    }
    CHECK(sys.distance(at, bt) == sys.distance(a, b));
  }
  // generic shifts agree to rounding
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = uni(rng);
    Vec at = a.array() + t, bt = b.array() + t;
    for (Index i = 0; i < 2; ++i) {
      at(i) -= std::floor(at(i));
      bt(i) -= std::floor(bt(i));
    }
    CHECK(std::abs(sys.distance(at, bt) - sys.distance(a, b)) <= 4e-16);
  }
}

TEST_CASE("cover count: 1-D and 2-D sanity") {
  CHECK(cover_count_eps_half(1.0, 0.5, 1) == 6);
  CHECK(cover_count_eps_half(1.0, 0.5, 2) >= 12);  // covers the disc
  CHECK(cover_count_eps_half(0.5, 1.0, 1) == 4);
}
