#include <doctest.h>

#include <random>

#include "flc/delone.hpp"
#include "flc/generators.hpp"
#include "flc/point_set.hpp"
#include "flc/spatial_index.hpp"
#include "support/oracles.hpp"

using namespace flc;

namespace {
PointSet z_segment(double lo, double hi) {
  return lattice(Mat::Identity(1, 1), Box::interval(lo, hi));
}
}  // namespace

TEST_CASE("index: integer segment ball query") {
  PointSet ps = z_segment(-10, 10);
  CHECK(ps.size() == 21);
  SpatialIndex index(ps);
  auto hits = index.ball({Vec::Zero(1), 1.5});
  REQUIRE(hits.size() == 3);
  CHECK(ps.points(hits[0], 0) == -1.0);
  CHECK(ps.points(hits[1], 0) == 0.0);
  CHECK(ps.points(hits[2], 0) == 1.0);
}

TEST_CASE("index: empty query ball") {
  PointSet ps = z_segment(-10, 10);
  SpatialIndex index(ps);
  CHECK(index.ball({Vec::Constant(1, 0.5), 0.0}).empty());
  CHECK_THROWS_AS(index.ball({Vec::Zero(1), -1.0}), std::invalid_argument);
}

TEST_CASE("index equals linear scan on random 2-D data") {
  PointSet ps = uniform_random_points(Box::square(-10, 10), 400, 0.001, 1234);
  SpatialIndex index(ps);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-11.0, 11.0);
  std::uniform_real_distribution<double> rad(0.0, 4.0);
  for (int q = 0; q < 100; ++q) {
    Vec c(2);
    c << uni(rng), uni(rng);
    const double radius = rad(rng);
    CHECK(index.ball({c, radius}) == oracle::linear_scan_ball(ps, c, radius));
  }
}

TEST_CASE("verify_delone: unit lattice") {
  PointSet ps = z_segment(-10, 10);
  DeloneReport rep = verify_delone(ps);
  CHECK(rep.uniformly_discrete);
  CHECK(rep.relatively_dense);
  CHECK(rep.min_gap == doctest::Approx(1.0));
  CHECK(rep.max_hole == doctest::Approx(0.5));
}

TEST_CASE("verify_delone: gap below 2r fails uniform discreteness") {
  PointSet ps;
  ps.dim = 1;
  ps.points.resize(2, 1);
  ps.points << 0.0, 0.3;
  ps.r = 0.5;
  ps.R = 0.5;
  ps.window = Box::interval(-1.0, 1.5);
  DeloneReport rep = verify_delone(ps);
  CHECK_FALSE(rep.uniformly_discrete);
  CHECK(rep.min_gap == doctest::Approx(0.3));
}

TEST_CASE("verify_delone: window too small") {
  PointSet ps = z_segment(-10, 10);
  ps.R = 30.0;
  CHECK_THROWS_WITH_AS(verify_delone(ps), doctest::Contains("window too small"),
                       std::runtime_error);
}

TEST_CASE("verify_delone: visible points are not relatively dense") {
  PointSet ps = visible_points(60);
  REQUIRE_FALSE(ps.claims_delone);
  DeloneReport rep = verify_delone(ps);
  CHECK(rep.uniformly_discrete);
  CHECK_FALSE(rep.relatively_dense);
  CHECK(rep.max_hole > 1.0);
}

TEST_CASE("crop: enumeration and idempotence") {
  PointSet ps = z_segment(-10, 10);
  PointSet sub = crop(ps, Box::interval(-2, 2));
  CHECK(sub.size() == 5);
  CHECK(sub.window.lo(0) == -2.0);
  PointSet again = crop(sub, Box::interval(-1, 2));
  PointSet direct = crop(ps, Box::interval(-1, 2));
  CHECK(again.size() == direct.size());
  CHECK(again.points == direct.points);
  CHECK_THROWS_AS(crop(sub, Box::interval(-3, 2)), std::invalid_argument);
}

TEST_CASE("crop to full window is the identity") {
  PointSet ps = z_segment(-5, 5);
  PointSet same = crop(ps, ps.window);
  CHECK(same.size() == ps.size());
  CHECK(same.points == ps.points);
}

TEST_CASE("translate: formula, inverse, group action") {
  PointSet ps = z_segment(-10, 10);
  PointSet moved = translate(ps, Vec::Constant(1, 0.25));
  CHECK(moved.points(0, 0) == doctest::Approx(-10.25));
  CHECK(moved.window.lo(0) == doctest::Approx(-10.25));

  PointSet back = translate(moved, Vec::Constant(1, -0.25));
  CHECK((back.points - ps.points).cwiseAbs().maxCoeff() <= 1e-12);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = uni(rng), y = uni(rng);
    PointSet ab = translate(translate(ps, Vec::Constant(1, x)), Vec::Constant(1, y));
    PointSet sum = translate(ps, Vec::Constant(1, x + y));
    CHECK((ab.points - sum.points).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("translate: identity and module shift") {
  PointSet ps = z_segment(-10, 10);
  PointSet same = translate(ps, Vec::Zero(1));
  CHECK(same.points == ps.points);

  PointSet by_point = translate(ps, Vec::Constant(1, 3.0));
  REQUIRE(by_point.has_module());  // integer shift stays in the module
  CHECK(by_point.module_coords(0, 0) == -13);

  PointSet off_module = translate(ps, Vec::Constant(1, 0.25));
  CHECK_FALSE(off_module.has_module());
}

TEST_CASE("validate: rejects malformed sets") {
  PointSet ps = z_segment(-5, 5);
  validate(ps);

  PointSet outside = ps;
  outside.points(0, 0) = 99.0;
  CHECK_THROWS_AS(validate(outside), std::invalid_argument);

  PointSet bad_gap = ps;
  bad_gap.r = 0.75;  // claims gaps >= 1.5, actual gap is 1
  CHECK_THROWS_AS(validate(bad_gap), std::invalid_argument);

  PointSet bad_module = ps;
  bad_module.module_coords(3, 0) += 1;
  CHECK_THROWS_AS(validate(bad_module), std::invalid_argument);

  PointSet bad_weights = ps;
  bad_weights.weights.resize(2);
  CHECK_THROWS_AS(validate(bad_weights), std::invalid_argument);
}

TEST_CASE("generated delone sets verify as delone") {
  for (const PointSet& ps :
       {z_segment(-30, 30), lattice(Mat::Identity(2, 2), Box::square(-12, 12))}) {
    REQUIRE(ps.claims_delone);
    DeloneReport rep = verify_delone(ps);
    CHECK(rep.uniformly_discrete);
    CHECK(rep.relatively_dense);
  }
}
