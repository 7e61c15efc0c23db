#include <doctest.h>

#include <cmath>

#include "flc/tilings.hpp"
#include "support/oracles.hpp"

using namespace flc;

TEST_CASE("domino counts match exhaustive enumeration") {
  CHECK(domino_count(2, 2).count == oracle::domino_tilings_brute_force(2, 2));
  CHECK(domino_count(2, 3).count == oracle::domino_tilings_brute_force(2, 3));
  CHECK(domino_count(4, 4).count == oracle::domino_tilings_brute_force(4, 4));
  CHECK(domino_count(5, 6).count == oracle::domino_tilings_brute_force(5, 6));
  CHECK(domino_count(2, 2).count == 2);
  CHECK(domino_count(2, 3).count == 3);
  CHECK(domino_count(4, 4).count == 36);
}

TEST_CASE("domino: odd area gives zero, not an error") {
  CHECK(domino_count(3, 3).count == 0);
  CHECK(domino_count(3, 3).log_count_per_site == 0.0);
}

TEST_CASE("domino: transpose symmetry") {
  for (auto [m, n] : {std::pair{2, 8}, {3, 4}, {4, 6}, {5, 8}}) {
    CHECK(domino_count(m, n).count == domino_count(n, m).count);
  }
}

TEST_CASE("domino: per-site entropy nondecreasing along squares") {
  double prev = 0.0;
  for (int n : {2, 4, 6, 8, 10}) {
    const double v = domino_count(n, n).log_count_per_site;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("domino: width capacity error") {
  CHECK_THROWS_WITH_AS(domino_count(25, 25), doctest::Contains("width"), std::runtime_error);
}

TEST_CASE("lozenge counts match the product-formula oracle") {
  CHECK(lozenge_count(1, 1, 1).count == 2);
  CHECK(lozenge_count(2, 2, 2).count == 20);
  for (int c = 1; c <= 5; ++c) CHECK(lozenge_count(1, 1, c).count == c + 1);
  for (auto [a, b, c] : {std::array{2, 3, 4}, {3, 3, 3}, {4, 4, 4}, {2, 5, 3}}) {
    const double formula = oracle::lozenge_product_formula(a, b, c);
    CHECK(log_mpz(lozenge_count(a, b, c).count) == doctest::Approx(std::log(formula)).epsilon(1e-9));
  }
}

TEST_CASE("lozenge: symmetric in (a, b, c)") {
  const auto base = lozenge_count(2, 3, 4).count;
  CHECK(lozenge_count(2, 4, 3).count == base);
  CHECK(lozenge_count(3, 2, 4).count == base);
  CHECK(lozenge_count(4, 3, 2).count == base);
  CHECK(lozenge_count(3, 4, 2).count == base);
  CHECK(lozenge_count(4, 2, 3).count == base);
}

TEST_CASE("lozenge: capacity guard") {
  CHECK_THROWS_WITH_AS(lozenge_count(20, 20, 20), doctest::Contains("capacity"),
                       std::runtime_error);
}

TEST_CASE("tiling sites bookkeeping") {
  TilingCountResult d = domino_count(4, 6);
  CHECK(d.sites == 24);
  CHECK(d.log_count_per_site == doctest::Approx(log_mpz(d.count) / 24.0));
  TilingCountResult l = lozenge_count(2, 3, 4);
  CHECK(l.sites == 2 * 3 + 3 * 4 + 4 * 2);
}
