#include <doctest.h>

#include <cmath>
#include <random>

#include "flc/mahler.hpp"

using namespace flc;

namespace {
LaurentPolynomial domino_poly() { return LaurentPolynomial::parse("0,0,4 1,0,1 -1,0,1 0,1,1 0,-1,1"); }
LaurentPolynomial lozenge_poly() { return LaurentPolynomial::parse("0,0,1 1,0,1 0,1,1"); }
}  // namespace

TEST_CASE("eval on torus: simple values") {
  CHECK(std::abs(eval_on_torus(lozenge_poly(), 0, 0) - Complex(3, 0)) <= 1e-12);
  LaurentPolynomial x = LaurentPolynomial::parse("1,0,1");
  CHECK(std::abs(std::abs(eval_on_torus(x, 0.37, 0.11)) - 1.0) <= 1e-12);
}

TEST_CASE("eval on torus: conjugate pairs give a real cosine polynomial") {
  LaurentPolynomial p = domino_poly();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const double s = uni(rng), t = uni(rng);
    const Complex v = eval_on_torus(p, s, t);
    const double expected = 4.0 + 2.0 * std::cos(2 * kPi * s) + 2.0 * std::cos(2 * kPi * t);
    CHECK(std::abs(v.imag()) <= 1e-12);
    CHECK(v.real() == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("mahler: constants and monomials are exact") {
  LaurentPolynomial c = LaurentPolynomial::parse("0,0,-2.5");
  QuadratureResult rc = mahler_measure(c, 16, 2);
  CHECK(rc.value == doctest::Approx(std::log(2.5)).epsilon(1e-15));

  LaurentPolynomial xy2 = LaurentPolynomial::parse("1,2,1");
  QuadratureResult rm = mahler_measure(xy2, 16, 2);
  CHECK(std::abs(rm.value) <= 1e-14);  // unit modulus on the torus
}

TEST_CASE("mahler: m(1+x+y) against the known value") {
  QuadratureResult res = mahler_measure(lozenge_poly(), 64, 5);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(0.3230659472).epsilon(0.0005 / 0.32));
  CHECK(std::abs(res.value - 0.3230659472) <= 5e-4);
  CHECK(res.singular_cells_refined > 0);  // 1+x+y vanishes on the torus
  // self-convergence: last grid-doubling delta small
  const auto& lv = res.levels;
  REQUIRE(lv.size() == 5);
  CHECK(std::abs(lv[4].value - lv[3].value) <= 5e-4);
}

TEST_CASE("mahler: m(4+x+1/x+y+1/y) against the known value") {
  QuadratureResult res = mahler_measure(domino_poly(), 64, 5);
  CHECK(res.converged);
  CHECK(std::abs(res.value - 1.1662436161) <= 2e-3);
  CHECK(std::abs(res.levels[4].value - res.levels[3].value) <= 5e-4);
}

TEST_CASE("mahler: multiplicativity on P = Q = 1+x+y") {
  // (1+x+y)^2 = 1 + 2x + 2y + x^2 + y^2 + 2xy
  LaurentPolynomial sq = LaurentPolynomial::parse("0,0,1 1,0,2 0,1,2 2,0,1 0,2,1 1,1,2");
  QuadratureResult rp = mahler_measure(lozenge_poly(), 64, 4);
  QuadratureResult rsq = mahler_measure(sq, 64, 4);
  CHECK(std::abs(rsq.value - 2.0 * rp.value) <=
        rsq.error_estimate + 2.0 * rp.error_estimate + 1e-4);
}

TEST_CASE("mahler: torus symmetries") {
  QuadratureResult base = mahler_measure(lozenge_poly(), 64, 4);
  LaurentPolynomial swapped = LaurentPolynomial::parse("0,0,1 0,1,1 1,0,1");
  QuadratureResult rs = mahler_measure(swapped, 64, 4);
  CHECK(rs.value == doctest::Approx(base.value).epsilon(1e-12));

  LaurentPolynomial inverted = LaurentPolynomial::parse("0,0,1 -1,0,1 0,1,1");  // x -> 1/x
  QuadratureResult ri = mahler_measure(inverted, 64, 4);
  CHECK(std::abs(ri.value - base.value) <= ri.error_estimate + base.error_estimate + 1e-6);
}

TEST_CASE("mahler: scalar multiples shift by log|c|") {
  LaurentPolynomial scaled = LaurentPolynomial::parse("0,0,3 1,0,3 0,1,3");
  QuadratureResult base = mahler_measure(lozenge_poly(), 64, 4);
  QuadratureResult rs = mahler_measure(scaled, 64, 4);
  CHECK(std::abs(rs.value - (std::log(3.0) + base.value)) <=
        rs.error_estimate + base.error_estimate + 1e-6);
}

TEST_CASE("mahler: invalid input") {
  LaurentPolynomial zero;
  zero.terms = {{0, 0, Complex(0, 0)}};
  CHECK_THROWS_AS(mahler_measure(zero, 16, 2), std::invalid_argument);
  CHECK_THROWS_AS(LaurentPolynomial::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(LaurentPolynomial::parse("1,2"), std::invalid_argument);
}

TEST_CASE("dimer entropy extrapolation: dominoes") {
  DimerEntropyFit fit = dimer_entropy_extrapolation(
      DimerModel::domino, {{8, 8, 0}, {12, 12, 0}, {16, 16, 0}});
  CHECK(fit.per_site > 0.28);
  CHECK(fit.per_site < 0.30);
  CHECK(fit.fit_residual < 1e-3);
}

TEST_CASE("dimer entropy extrapolation: lozenges") {
  DimerEntropyFit fit = dimer_entropy_extrapolation(
      DimerModel::lozenge, {{2, 2, 2}, {3, 3, 3}, {4, 4, 4}, {5, 5, 5}});
  CHECK(fit.per_site > 0.0);
  CHECK(fit.fit_residual < 5e-3);
}

TEST_CASE("dimer entropy: needs at least two sizes") {
  CHECK_THROWS_WITH_AS(dimer_entropy_extrapolation(DimerModel::domino, {{8, 8, 0}}),
                       doctest::Contains("2 sizes"), std::invalid_argument);
}

TEST_CASE("dimer entropy: odd domino area is degenerate") {
  CHECK_THROWS_WITH_AS(
      dimer_entropy_extrapolation(DimerModel::domino, {{3, 3, 0}, {5, 5, 0}}),
      doctest::Contains("degenerate ensemble"), std::runtime_error);
}

TEST_CASE("mahler versus dimer: domino ratio stabilises") {
  MahlerDimerReport rep =
      mahler_vs_dimer_report(DimerModel::domino, {{8, 8, 0}, {12, 12, 0}, {16, 16, 0}});
  CHECK(rep.per_site > 0.0);
  CHECK(rep.ratio_stability <= 0.05);
  CHECK(rep.ratio == doctest::Approx(4.0).epsilon(0.05));  // measured, near the small rational 4
}

TEST_CASE("mahler versus dimer: lozenge ratio stabilises") {
  MahlerDimerReport rep = mahler_vs_dimer_report(DimerModel::lozenge, {});
  CHECK(rep.per_site > 0.0);
  CHECK(rep.ratio_stability <= 0.08);
}
