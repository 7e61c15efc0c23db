#ifndef FLC_TILINGS_HPP
#define FLC_TILINGS_HPP

#include <gmpxx.h>

#include <array>
#include <string>

namespace flc {

struct TilingCountResult {
  std::string model;        // "domino" or "lozenge"
  std::array<long, 3> dims;  // {m, n, 0} or {a, b, c}
  mpz_class count;
  long sites = 0;                   // m*n dominoes-grid cells, or ab+bc+ca lozenges
  double log_count_per_site = 0.0;  // ln(count)/sites; 0 for count == 0
};

/// Exact number of domino tilings of the m x n grid, column transfer matrix
/// over edge-profile states. Width limit: min(m, n) <= 24.
TilingCountResult domino_count(int m, int n);

/// Exact number of lozenge tilings of the a x b x c hexagon, computed by the
/// nonintersecting-path (column interlacing) transfer recursion.
TilingCountResult lozenge_count(int a, int b, int c);

/// ln of a positive big integer.
double log_mpz(const mpz_class& z);

}  // namespace flc

#endif
