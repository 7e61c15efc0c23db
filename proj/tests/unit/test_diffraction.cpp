#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <set>

#include "flc/diffraction.hpp"
#include "flc/generators.hpp"
#include "support/oracles.hpp"

using namespace flc;

TEST_CASE("autocorrelation: unit lattice coefficients") {
  PointSet ps = lattice(Mat::Identity(1, 1), Box::interval(-200, 200));
  Autocorrelation ac = autocorrelation(ps, 5.0);
  REQUIRE(ac.diffs.rows() == 11);  // z in {-5..5}
  for (Index i = 0; i < ac.coeffs.size(); ++i) {
    CHECK(ac.coeffs(i).real() == doctest::Approx(1.0).epsilon(0.02));
    CHECK(ac.coeffs(i).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("autocorrelation: hermitian and z = 0 density") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-600, 600));
  Autocorrelation ac = autocorrelation(fib, 12.0);
  const Box eroded = fib.window.eroded(12.0);
  long inside = 0;
  for (Index i = 0; i < fib.size(); ++i)
    if (eroded.contains(fib.point(i))) ++inside;

  bool saw_zero = false;
  for (Index i = 0; i < ac.diffs.rows(); ++i) {
    if (ac.diffs(i, 0) == 0.0) {
      saw_zero = true;
      CHECK(ac.coeffs(i).real() ==
            doctest::Approx(inside / ac.normalizing_volume).epsilon(1e-9));
    }
    // hermitian: coeff(-z) = conj(coeff(z))
    bool found = false;
    for (Index j = 0; j < ac.diffs.rows(); ++j) {
      if (std::abs(ac.diffs(j, 0) + ac.diffs(i, 0)) <= 1e-9) {
        found = true;
        CHECK(std::abs(ac.coeffs(j) - std::conj(ac.coeffs(i))) <= 1e-9);
      }
    }
    CHECK(found);
  }
  CHECK(saw_zero);
}

TEST_CASE("autocorrelation: zero weights kill all coefficients") {
  PointSet ps = lattice(Mat::Identity(1, 1), Box::interval(-50, 50));
  ps.weights = CVec::Zero(ps.size());
  Autocorrelation ac = autocorrelation(ps, 4.0);
  for (Index i = 0; i < ac.coeffs.size(); ++i) CHECK(std::abs(ac.coeffs(i)) == 0.0);
}

TEST_CASE("autocorrelation: fibonacci support vs double-loop oracle") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-1200, 1200));
  const double z_max = 8.0;
  Autocorrelation ac = autocorrelation(fib, z_max);

  // oracle: quadratic double loop over the eroded sample
  const Box eroded = fib.window.eroded(z_max);
  std::map<std::int64_t, double> expect;
  for (Index i = 0; i < fib.size(); ++i) {
    if (!eroded.contains(fib.point(i))) continue;
    for (Index j = 0; j < fib.size(); ++j) {
      if (!eroded.contains(fib.point(j))) continue;
      const double z = fib.points(i, 0) - fib.points(j, 0);
      if (std::abs(z) > z_max + 1e-12) continue;
      expect[std::llround(z * 1e9)] += 1.0;
    }
  }
  REQUIRE(ac.diffs.rows() == static_cast<Index>(expect.size()));
  for (Index i = 0; i < ac.diffs.rows(); ++i) {
    auto it = expect.find(std::llround(ac.diffs(i, 0) * 1e9));
    REQUIRE(it != expect.end());
    CHECK(ac.coeffs(i).real() * ac.normalizing_volume == doctest::Approx(it->second));
  }

  // support lies in the difference module Z + Z tau
  const double tau = 0.5 * (1.0 + std::sqrt(5.0));
  for (Index i = 0; i < ac.diffs.rows(); ++i) {
    const double z = ac.diffs(i, 0);
    bool in_module = false;
    for (int n = -8; n <= 8 && !in_module; ++n) {
      const double m = z - n * tau;
      if (std::abs(m - std::round(m)) <= 1e-9) in_module = true;
    }
    CHECK(in_module);
  }
}

TEST_CASE("intensity: lattice values against the closed form") {
  PointSet ps = lattice(Mat::Identity(1, 1), Box::interval(-500, 500));
  Mat grid(4, 1);
  grid << 0.0, 0.5, 0.25, 1.0;
  Spectrum sp = intensity(ps, grid);
  for (Index i = 0; i < grid.rows(); ++i) {
    CHECK(sp.intensity(i) ==
          doctest::Approx(oracle::lattice_intensity_closed_form(500, grid(i, 0))).epsilon(1e-9));
  }
  CHECK(sp.intensity(0) / sp.volume == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sp.intensity(1) <= 1e-3 + 1e-12);  // destructive interference at k = 1/2
}

TEST_CASE("intensity: balanced thue-morse weights vanish at k = 0") {
  PointSet tm = substitution_chain(thue_morse_rule(), 10, "a");
  Mat k = Mat::Zero(1, 1);
  Spectrum sp = intensity(tm, k);
  CHECK(sp.intensity(0) <= 1e-12);
}

TEST_CASE("intensity: nonnegative and even for real weights") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-300, 300));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 3.0);
  for (int t = 0; t < 25; ++t) {
    Vec k = Vec::Constant(1, uni(rng));
    const double plus = intensity_at(fib, k);
    const double minus = intensity_at(fib, Vec(-k));
    CHECK(plus >= 0.0);
    CHECK(std::abs(plus - minus) <= 1e-9 * std::max(1.0, plus));
  }
}

TEST_CASE("intensity: translation invariance") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-300, 300));
  PointSet moved = translate(fib, Vec::Constant(1, 7.25));
  Mat grid(64, 1);
  for (int i = 0; i < 64; ++i) grid(i, 0) = 0.05 * (i + 1);
  Spectrum a = intensity(fib, grid);
  Spectrum b = intensity(moved, grid);
  for (Index i = 0; i < grid.rows(); ++i)
    CHECK(std::abs(a.intensity(i) - b.intensity(i)) <= 1e-9 * std::max(1.0, a.intensity(i)));
}

TEST_CASE("intensity: factorised 2-D path matches the direct sum") {
  PointSet vp = visible_points(80);
  REQUIRE(vp.has_module());
  std::vector<double> k1, k2;
  for (int i = 0; i < 5; ++i) {
    k1.push_back(0.07 + 0.19 * i);
    k2.push_back(0.11 + 0.17 * i);
  }
  Mat grid(25, 2);
  Index row = 0;
  for (double a : k1)
    for (double b : k2) {
      grid(row, 0) = a;
      grid(row, 1) = b;
      ++row;
    }
  Spectrum fast = intensity(vp, grid);  // row-factorised (integer module, many k)
  for (Index i = 0; i < grid.rows(); ++i) {
    const double direct = intensity_at(vp, grid.row(i).transpose());
    CHECK(std::abs(fast.intensity(i) - direct) <= 1e-9 * std::max(1.0, direct));
  }
}

TEST_CASE("detect_peaks: integer grid on the unit lattice") {
  PointSet z = lattice(Mat::Identity(1, 1), Box::interval(-500, 500));
  Mat grid(13, 1);
  for (int i = 0; i < 13; ++i) grid(i, 0) = 0.25 * i;  // contains k = 0,1,2,3
  std::vector<Spectrum> spectra;
  for (double f : {0.25, 0.5, 0.75, 1.0}) {
    const Vec c = z.window.center();
    const Vec half = 0.5 * f * z.window.extent();
    spectra.push_back(intensity(f >= 1 ? z : crop(z, Box(c - half, c + half)), grid));
  }
  PeakReport rep = detect_peaks(spectra);
  std::set<double> positions;
  for (const auto& p : rep.peaks) {
    positions.insert(p.k(0));
    CHECK(p.intensity == doctest::Approx(1.0).epsilon(0.02));  // density^2
    CHECK(p.scaling_r2 >= 0.99);
  }
  CHECK(positions == std::set<double>{1.0, 2.0, 3.0});  // interior integer k
  CHECK(rep.background_level <= 1e-6);
}

TEST_CASE("detect_peaks: seeded random control has no volume-scaling peaks") {
  PointSet rnd = uniform_random_points(Box::interval(-4000, 4000), 8000, 0.01, 424242);
  Mat grid(512, 1);
  for (int i = 0; i < 512; ++i) grid(i, 0) = 3.0 * (i + 0.381966) / 512.0;
  std::vector<Spectrum> spectra;
  for (double f : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    const Vec c = rnd.window.center();
    const Vec half = 0.5 * f * rnd.window.extent();
    spectra.push_back(intensity(f >= 1 ? rnd : crop(rnd, Box(c - half, c + half)), grid));
  }
  PeakReport rep = detect_peaks(spectra);
  CHECK(rep.peaks.empty());  // k = 0 is not on this grid; nothing else scales
}

TEST_CASE("detect_peaks: input validation") {
  PointSet z = lattice(Mat::Identity(1, 1), Box::interval(-100, 100));
  Mat grid(4, 1);
  grid << 0.0, 0.5, 1.0, 1.5;
  Spectrum one = intensity(z, grid);
  CHECK_THROWS_AS(detect_peaks({one, one}), std::invalid_argument);
  std::vector<Spectrum> bad = {one, one, one};
  CHECK_THROWS_WITH_AS(detect_peaks(bad), doctest::Contains("increasing"), std::invalid_argument);
}

TEST_CASE("consistency: intensity equals the fourier sum of the autocorrelation") {
  // on the eroded crop every realised difference is inside z_max, so the
  // truncation is exact and the two routes must agree
  PointSet z = lattice(Mat::Identity(1, 1), Box::interval(-64, 64));
  PointSet inner = crop(z, Box::interval(-20, 20));
  const double z_max = 40.5;
  PointSet wide = crop(z, Box::interval(-60.5, 60.5));
  Autocorrelation ac = autocorrelation(wide, z_max);
  REQUIRE(ac.normalizing_volume == inner.window.volume());
  for (double k : {0.1, 0.35, 1.0}) {
    Complex acc(0, 0);
    for (Index i = 0; i < ac.diffs.rows(); ++i) {
      const double phase = -2.0 * kPi * k * ac.diffs(i, 0);
      acc += ac.coeffs(i) * Complex(std::cos(phase), std::sin(phase));
    }
    const double direct = intensity_at(inner, Vec::Constant(1, k));
    CHECK(std::abs(acc.imag()) <= 1e-9);
    CHECK(acc.real() == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("diagnostic: fibonacci model set is consistent with pure point") {
  PointSet fib = model_set(fibonacci_scheme(), Box::interval(-2600, 2600));
  DiagnosticConfig cfg;
  cfg.k_max = 3.2;
  cfg.n_k = 2048;
  DiagnosticReport rep = pure_point_diagnostic(fib, cfg);
  CHECK(rep.verdict == DiffractionVerdict::consistent_pure_point);
  CHECK(rep.report.pure_point_fraction >= 0.95);

  // top-5 peaks against the cut-and-project oracle
  auto expected = oracle::fibonacci_bragg_oracle(0.05, 3.2, 0.0, 1.0, 1e-4);
  REQUIRE(expected.size() >= 5);
  for (int i = 0; i < 5; ++i) {
    double best_dk = 1e9;
    const Peak* match = nullptr;
    for (const auto& p : rep.report.peaks) {
      const double dk = std::abs(p.k(0) - expected[static_cast<std::size_t>(i)].k);
      if (dk < best_dk) {
        best_dk = dk;
        match = &p;
      }
    }
    REQUIRE(match != nullptr);
    CHECK(best_dk <= 0.03 * expected[static_cast<std::size_t>(i)].k);
    CHECK(std::abs(match->intensity - expected[static_cast<std::size_t>(i)].intensity) <=
          0.03 * expected[static_cast<std::size_t>(i)].intensity);
  }
}

TEST_CASE("diagnostic: weighted thue-morse shows a continuous component") {
  PointSet tm = substitution_chain(thue_morse_rule(), 12, "a");
  DiagnosticConfig cfg;
  cfg.k_max = 1.0;
  cfg.n_k = 1024;
  DiagnosticReport rep = pure_point_diagnostic(tm, cfg);
  CHECK(rep.verdict == DiffractionVerdict::continuous_component);
  CHECK(rep.report.pure_point_fraction <= 0.70);
}
