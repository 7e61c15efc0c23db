#ifndef FLC_GENERATORS_HPP
#define FLC_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "flc/point_set.hpp"

namespace flc {

/// Lattice sample: all integer combinations of the basis columns inside the
/// window. Exact module coordinates; r, R derived from the basis geometry.
PointSet lattice(const Mat& basis, const Box& window);

/// Cut-and-project data: an embedding lattice in R^n together with projections
/// to physical (dim d) and internal (dim n-d) space, plus a compact acceptance
/// interval in internal space. Only n - d = 1 (interval windows) is supported;
/// the 1-D schemes exercise every statement we compute.
struct CutProjectScheme {
  int total_dim = 2;
  int physical_dim = 1;
  Mat lattice_basis;  // n x n
  Mat proj_phys;      // d x n
  Mat proj_int;       // (n-d) x n
  double window_lo = 0.0;
  double window_hi = 1.0;
  bool window_closed_hi = false;  // default half-open [lo, hi)
  double eps_fill = 1e-2;         // resolution of the statistical denseness check
};

/// The Fibonacci scheme: Z^2 with proj_phys(m,k) = m + k*tau and
/// proj_int(m,k) = m + k*tau', acceptance window [0,1) (contains 0).
CutProjectScheme fibonacci_scheme();

/// Model set { proj_phys(l) : l in lattice, proj_int(l) in window } inside
/// phys_window. Enumeration bounds come from inverting the stacked projection,
/// so the sample is complete in phys_window.
PointSet model_set(const CutProjectScheme& scheme, const Box& phys_window);

struct SubstitutionRule {
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> images;  // image word per letter, as letter ids
  Vec lengths;                           // positive tile lengths
  CVec weights;                          // optional per-letter weights (size 0 = none)
};

SubstitutionRule fibonacci_rule();   // a -> ab, b -> a, lengths (tau, 1)
SubstitutionRule thue_morse_rule();  // a -> ab, b -> ba, lengths (1,1), weights (+1,-1)

bool is_primitive(const SubstitutionRule& rule);

/// Validates the rule (primitive; lengths a Perron left eigenvector within
/// 1e-9) and lays out substitution^iterations(axiom) from 0; points are the
/// left tile endpoints, colours the letters.
PointSet substitution_chain(const SubstitutionRule& rule, int iterations, const std::string& axiom);

/// Visible lattice points of Z^2 with |p|,|q| <= bound and gcd(|p|,|q|) = 1
/// (gcd(0,k) = k). Uniformly discrete, not relatively dense.
PointSet visible_points(long bound);

/// { +-a_n : 1 <= n <= N } with a_n = 1 + e + ... + e^(n-1); FLC but not
/// relatively dense.
PointSet euler_gap_set(int N);

/// Seeded uniform control sample (std::mt19937_64, reproducible).
PointSet uniform_random_points(const Box& window, Index count, double r_declared,
                               std::uint64_t seed);

/// Z with i.i.d. two-letter colouring (seeded); non-repetitive control.
PointSet coin_colored_integers(long lo, long hi, std::uint64_t seed);

}  // namespace flc

#endif
