#include "flc/tilings.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace flc {

double log_mpz(const mpz_class& z) {
  if (z <= 0) throw std::invalid_argument("log_mpz: nonpositive value");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

TilingCountResult domino_count(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("domino_count: need m, n >= 1");
  if (std::min(m, n) > 24)
    throw std::runtime_error("domino_count: transfer width limited to 24");

  // Transfer over columns of the narrow side.
  const int rows = std::min(m, n);
  const int cols = std::max(m, n);
  const std::size_t states = std::size_t{1} << rows;

  std::vector<mpz_class> cur(states), nxt(states);
  cur[0] = 1;

  // Fill one column given the protrusion profile entering it; emit outgoing
  // profiles (horizontal dominoes sticking into the next column).
  struct Frame {
    int row;
    unsigned out;
  };
  Frame stack[32];
  for (int col = 0; col < cols; ++col) {
    for (auto& v : nxt) v = 0;
    for (std::size_t s = 0; s < states; ++s) {
      if (cur[s] == 0) continue;
      int sp = 0;
      stack[sp++] = {0, 0u};
      while (sp > 0) {
        Frame f = stack[--sp];
        int row = f.row;
        const unsigned out = f.out;
        // skip rows already covered by an incoming protrusion
        while (row < rows && (s >> row & 1u)) ++row;
        if (row == rows) {
          nxt[out] += cur[s];
          continue;
        }
        // horizontal domino: protrude into the next column
        stack[sp++] = {row + 1, out | (1u << row)};
        // vertical domino: cover this row and the next
        if (row + 1 < rows && !(s >> (row + 1) & 1u)) stack[sp++] = {row + 2, out};
      }
    }
    cur.swap(nxt);
  }

  TilingCountResult res;
  res.model = "domino";
  res.dims = {m, n, 0};
  res.count = cur[0];
  res.sites = static_cast<long>(m) * n;
  res.log_count_per_site = res.count > 0 ? log_mpz(res.count) / static_cast<double>(res.sites) : 0.0;
  return res;
}

TilingCountResult lozenge_count(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("lozenge_count: need a, b, c >= 1");
  // States are weakly decreasing a-tuples with entries in [0, c]; tilings of
  // the hexagon are chains of b+... adjacent columns dominating each other
  // (boxed-plane-partition form of the nonintersecting-path picture).
  // quadratic in the state count; keep exact runs at desk scale
  const double est = std::lgamma(a + c + 1.0) - std::lgamma(a + 1.0) - std::lgamma(c + 1.0);
  if (est > std::log(4000.0)) throw std::runtime_error("lozenge_count: state capacity exceeded");

  std::vector<std::vector<int>> states;
  std::vector<int> tuple(static_cast<std::size_t>(a), 0);
  // enumerate weakly decreasing tuples in lexicographic order
  for (;;) {
    states.push_back(tuple);
    int i = a - 1;
    while (i >= 0) {
      const int cap = i == 0 ? c : tuple[static_cast<std::size_t>(i - 1)];
      if (tuple[static_cast<std::size_t>(i)] < cap) {
        ++tuple[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < a; ++j) tuple[static_cast<std::size_t>(j)] = 0;
        break;
      }
      --i;
    }
    if (i < 0) break;
  }

  auto dominates = [&](const std::vector<int>& hi, const std::vector<int>& lo) {
    for (int i = 0; i < a; ++i)
      if (hi[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)]) return false;
    return true;
  };

  // chain count over b columns: vector of ones transferred b-1 times, summed.
  std::vector<mpz_class> cur(states.size(), 1);
  for (int col = 1; col < b; ++col) {
    std::vector<mpz_class> nxt(states.size());
    for (std::size_t j = 0; j < states.size(); ++j) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (cur[i] != 0 && dominates(states[i], states[j])) acc += cur[i];
      }
      nxt[j] = acc;
    }
    cur.swap(nxt);
  }
  mpz_class total = 0;
  for (const auto& v : cur) total += v;

  TilingCountResult res;
  res.model = "lozenge";
  res.dims = {a, b, c};
  res.count = total;
  res.sites = static_cast<long>(a) * b + static_cast<long>(b) * c + static_cast<long>(c) * a;
  res.log_count_per_site = res.count > 0 ? log_mpz(res.count) / static_cast<double>(res.sites) : 0.0;
  return res;
}

}  // namespace flc
