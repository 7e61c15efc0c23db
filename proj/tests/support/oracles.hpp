#ifndef FLC_TESTS_ORACLES_HPP
#define FLC_TESTS_ORACLES_HPP

// Independent reference implementations used to freeze expected values.
// Everything here is deliberately brute force and shares no code with the
// library paths it checks.

#include <cstdint>
#include <string>
#include <vector>

#include "flc/point_set.hpp"
#include "flc/types.hpp"

namespace oracle {

/// Closed-ball membership by linear scan.
std::vector<flc::Index> linear_scan_ball(const flc::PointSet& ps, const flc::Vec& center,
                                         double radius);

/// Sorted gap values (deduplicated at tol) of a 1-D sample.
std::vector<double> gap_values(const flc::PointSet& ps, double tol = 1e-9);

/// Distinct D-patches by direct double-loop enumeration with string keys of
/// rounded offsets (and colours); no spatial index, no canonical machinery.
long brute_force_patch_count(const flc::PointSet& ps, double D);

/// Number of domino tilings of an m x n grid by exhaustive cell recursion.
std::uint64_t domino_tilings_brute_force(int m, int n);

/// Boxed-plane-partition product formula for lozenge tilings (exact while the
/// product fits in long double within 1e-6; used only for small boxes).
double lozenge_product_formula(int a, int b, int c);

/// Bragg data of the Fibonacci cut-and-project set with acceptance window
/// [w_lo, w_lo + w_len): peaks (q - tau' p)/sqrt(5) for integers (p, q), with
/// intensity |sinc(pi k_int w_len) * w_len / sqrt(5)|^2.
struct BraggPeak {
  double k = 0.0;
  double intensity = 0.0;
};
std::vector<BraggPeak> fibonacci_bragg_oracle(double k_min, double k_max, double w_lo,
                                              double w_len, double min_intensity);

/// |sum_{j=-n}^{n} e(-2 pi i k j)|^2 / (2n) via the closed-form Dirichlet sum.
double lattice_intensity_closed_form(long n, double k);

}  // namespace oracle

#endif
