#include <doctest.h>

#include "flc/generators.hpp"
#include "flc/io.hpp"

using namespace flc;

TEST_CASE("round trip: fibonacci model set with module coordinates") {
  PointSet ps = model_set(fibonacci_scheme(), Box::interval(-80, 80));
  std::string text = write_pointset_string(ps);
  PointSet back = read_pointset_string(text);
  REQUIRE(back.size() == ps.size());
  CHECK((back.points - ps.points).cwiseAbs().maxCoeff() <= 1e-12);
  REQUIRE(back.has_module());
  CHECK(back.module_coords == ps.module_coords);
  CHECK(back.r == ps.r);
  CHECK(back.R == ps.R);
  CHECK(back.window.lo(0) == ps.window.lo(0));
  CHECK(back.provenance == ps.provenance);
  CHECK(back.claims_delone == ps.claims_delone);
  // serialisation is reproducible byte for byte
  CHECK(write_pointset_string(back) == text);
}

TEST_CASE("round trip: colours and weights") {
  PointSet ps = substitution_chain(thue_morse_rule(), 6, "a");
  std::string text = write_pointset_string(ps);
  PointSet back = read_pointset_string(text);
  REQUIRE(back.has_colors());
  REQUIRE(back.has_weights());
  CHECK(back.colors == ps.colors);
  CHECK(back.color_names == ps.color_names);
  CHECK((back.weights - ps.weights).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse errors carry position information") {
  CHECK_THROWS_WITH_AS(read_pointset_string("# r=0.5\n# R=0.5\n# window=0,1\n0.5\n"),
                       doctest::Contains("dim"), std::invalid_argument);

  const std::string nan_file =
      "# dim=1\n# r=0.5\n# R=0.5\n# window=-2,2\n0\nnan\n";
  CHECK_THROWS_WITH_AS(read_pointset_string(nan_file), doctest::Contains("line 6"),
                       std::invalid_argument);

  const std::string short_row = "# dim=2\n# r=0.5\n# R=0.5\n# window=-2,2;-2,2\n0 0\n1\n";
  CHECK_THROWS_WITH_AS(read_pointset_string(short_row), doctest::Contains("line 6"),
                       std::invalid_argument);
}

TEST_CASE("2-D window and weight tokens") {
  PointSet ps = visible_points(5);
  ps.weights = CVec::Constant(ps.size(), Complex(0.5, -0.25));
  std::string text = write_pointset_string(ps);
  PointSet back = read_pointset_string(text);
  CHECK(back.dim == 2);
  CHECK(back.window.hi(1) == 5.0);
  REQUIRE(back.has_weights());
  CHECK(back.weights(0) == Complex(0.5, -0.25));
  CHECK(back.module_coords == ps.module_coords);
}
