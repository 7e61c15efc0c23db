#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace oracle {

std::vector<flc::Index> linear_scan_ball(const flc::PointSet& ps, const flc::Vec& center,
                                         double radius) {
  std::vector<flc::Index> out;
  for (flc::Index i = 0; i < ps.size(); ++i) {
    if ((ps.point(i) - center).norm() <= radius) out.push_back(i);
  }
  return out;
}

std::vector<double> gap_values(const flc::PointSet& ps, double tol) {
  std::vector<double> xs = flc::sorted_coords(ps);
  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) gaps.push_back(xs[i + 1] - xs[i]);
  std::sort(gaps.begin(), gaps.end());
  std::vector<double> dedup;
  for (double gp : gaps) {
    if (dedup.empty() || gp - dedup.back() > tol) dedup.push_back(gp);
  }
  return dedup;
}

long brute_force_patch_count(const flc::PointSet& ps, double D) {
  // sort indices along the first axis so each centre scans one coordinate band
  std::vector<flc::Index> order(static_cast<std::size_t>(ps.size()));
  for (flc::Index i = 0; i < ps.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](flc::Index a, flc::Index b) { return ps.points(a, 0) < ps.points(b, 0); });

  std::set<std::string> keys;
  for (std::size_t ci = 0; ci < order.size(); ++ci) {
    const flc::Index i = order[ci];
    const flc::Vec c = ps.point(i);
    if (ps.window.margin(c) < D) continue;
    std::vector<std::string> rows;
    std::size_t lo = ci;
    while (lo > 0 && ps.points(order[lo - 1], 0) >= c(0) - D - 1e-9) --lo;
    for (std::size_t j = lo; j < order.size() && ps.points(order[j], 0) <= c(0) + D + 1e-9; ++j) {
      const flc::Vec off = ps.point(order[j]) - c;
      if (off.norm() > D + 1e-12) continue;
      std::ostringstream os;
      for (int a = 0; a < ps.dim; ++a) os << std::llround(off(a) * 1e9) << ",";
      if (ps.has_colors()) os << "c" << ps.colors[static_cast<std::size_t>(order[j])];
      rows.push_back(os.str());
    }
    std::sort(rows.begin(), rows.end());
    std::string key;
    for (const auto& r : rows) key += r + "|";
    keys.insert(key);
  }
  return static_cast<long>(keys.size());
}

namespace {
std::uint64_t domino_fill(int m, int n, std::uint64_t mask, std::map<std::uint64_t, std::uint64_t>& memo) {
  const std::uint64_t full = (std::uint64_t{1} << (m * n)) - 1;
  if (mask == full) return 1;
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  int bit = 0;
  while (mask >> bit & 1) ++bit;
  const int row = bit / n, col = bit % n;
  std::uint64_t total = 0;
  if (col + 1 < n && !(mask >> (bit + 1) & 1))
    total += domino_fill(m, n, mask | (std::uint64_t{1} << bit) | (std::uint64_t{1} << (bit + 1)), memo);
  if (row + 1 < m)
    total += domino_fill(m, n, mask | (std::uint64_t{1} << bit) | (std::uint64_t{1} << (bit + n)), memo);
  memo[mask] = total;
  return total;
}
}  // namespace

std::uint64_t domino_tilings_brute_force(int m, int n) {
  std::map<std::uint64_t, std::uint64_t> memo;
  return domino_fill(m, n, 0, memo);
}

double lozenge_product_formula(int a, int b, int c) {
  long double prod = 1.0L;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k)
        prod *= static_cast<long double>(i + j + k - 1) / static_cast<long double>(i + j + k - 2);
  return static_cast<double>(prod);
}

std::vector<BraggPeak> fibonacci_bragg_oracle(double k_min, double k_max, double w_lo,
                                              double w_len, double min_intensity) {
  (void)w_lo;  // the window offset only shifts phases; intensities are |.|^2
  const double sqrt5 = std::sqrt(5.0);
  const double tau = 0.5 * (1.0 + sqrt5);
  const double tauc = 0.5 * (1.0 - sqrt5);
  std::vector<BraggPeak> peaks;
  const int span = static_cast<int>(std::ceil(k_max * sqrt5)) + 40;
  for (int p = -span; p <= span; ++p) {
    for (int q = -span; q <= span; ++q) {
      const double k = (q - tauc * p) / sqrt5;
      if (k < k_min || k > k_max) continue;
      const double k_int = (tau * p - q) / sqrt5;
      const double arg = flc::kPi * k_int * w_len;
      const double amp = std::abs(arg) < 1e-14 ? w_len : std::sin(arg) / (flc::kPi * k_int);
      const double intensity = (amp / sqrt5) * (amp / sqrt5);
      if (intensity >= min_intensity) peaks.push_back({k, intensity});
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const BraggPeak& a, const BraggPeak& b) { return a.intensity > b.intensity; });
  return peaks;
}

double lattice_intensity_closed_form(long n, double k) {
  // sum_{j=-n}^{n} e(-2 pi i k j) = sin((2n+1) pi k) / sin(pi k)
  const double denom = std::sin(flc::kPi * k);
  double s;
  if (std::abs(denom) < 1e-14)
    s = static_cast<double>(2 * n + 1);
  else
    s = std::sin((2.0 * n + 1.0) * flc::kPi * k) / denom;
  return s * s / (2.0 * n);
}

}  // namespace oracle
