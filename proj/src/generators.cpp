#include "flc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flc {

namespace {

constexpr double kTau = 1.6180339887498948482;   // (1+sqrt 5)/2
constexpr double kTauC = -0.6180339887498948482;  // (1-sqrt 5)/2

// Lagrange-Gauss reduction of a 2-D lattice basis (columns).
Mat gauss_reduce(Mat b) {
  Vec u = b.col(0), v = b.col(1);
  if (u.squaredNorm() > v.squaredNorm()) std::swap(u, v);
  for (int iter = 0; iter < 64; ++iter) {
    const double mu = std::round(v.dot(u) / u.squaredNorm());
    v -= mu * u;
    if (v.squaredNorm() >= u.squaredNorm()) break;
    std::swap(u, v);
  }
  Mat out(2, 2);
  out.col(0) = u;
  out.col(1) = v;
  return out;
}

// Covering radius of a 2-D lattice: largest circumradius over empty
// circumcircles of lattice triangles near the origin (reduced basis).
double covering_radius_2d(const Mat& reduced) {
  std::vector<Vec> near;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) near.push_back(reduced.col(0) * i + reduced.col(1) * j);
  std::vector<Vec> all;
  for (int i = -6; i <= 6; ++i)
    for (int j = -6; j <= 6; ++j) all.push_back(reduced.col(0) * i + reduced.col(1) * j);

  double best = 0.0;
  for (std::size_t a = 0; a < near.size(); ++a) {
    for (std::size_t b = a + 1; b < near.size(); ++b) {
      for (std::size_t c = b + 1; c < near.size(); ++c) {
        Eigen::Matrix2d A;
        A.row(0) = 2.0 * (near[b] - near[a]).transpose();
        A.row(1) = 2.0 * (near[c] - near[a]).transpose();
        if (std::abs(A.determinant()) < 1e-10) continue;
        Eigen::Vector2d rhs(near[b].squaredNorm() - near[a].squaredNorm(),
                            near[c].squaredNorm() - near[a].squaredNorm());
        Vec cc = A.inverse() * rhs;
        const double rad = (cc - near[a]).norm();
        if (rad <= best) continue;
        bool is_empty = true;
        for (const Vec& p : all) {
          if ((p - cc).norm() < rad - 1e-9) {
            is_empty = false;
            break;
          }
        }
        if (is_empty) best = rad;
      }
    }
  }
  return best;
}

}  // namespace

PointSet lattice(const Mat& basis, const Box& window) {
  const int d = static_cast<int>(basis.rows());
  if (d != basis.cols() || (d != 1 && d != 2))
    throw std::invalid_argument("lattice: basis must be 1x1 or 2x2");
  if (std::abs(basis.determinant()) < 1e-12) throw std::invalid_argument("lattice: singular basis");
  if (window.dim() != d) throw std::invalid_argument("lattice: window dimension mismatch");

  // Coefficient bounds: image of the window corners under basis^{-1}.
  Mat inv = basis.inverse();
  Vec clo = Vec::Constant(d, std::numeric_limits<double>::infinity());
  Vec chi = -clo;
  const int corners = 1 << d;
  for (int m = 0; m < corners; ++m) {
    Vec corner(d);
    for (int a = 0; a < d; ++a) corner(a) = (m >> a & 1) ? window.hi(a) : window.lo(a);
    Vec c = inv * corner;
    clo = clo.cwiseMin(c);
    chi = chi.cwiseMax(c);
  }

  PointSet ps;
  ps.dim = d;
  ps.window = window;
  ps.module_basis = basis;
  ps.claims_delone = true;

  std::vector<Vec> pts;
  std::vector<IVec> coords;
  const auto push_if_inside = [&](const IVec& m) {
    Vec x = basis * m.cast<double>();
    if (window.contains(x)) {
      pts.push_back(x);
      coords.push_back(m);
    }
  };
  if (d == 1) {
    for (std::int64_t i = static_cast<std::int64_t>(std::floor(clo(0))) - 1;
         i <= static_cast<std::int64_t>(std::ceil(chi(0))) + 1; ++i) {
      IVec m(1);
      m << i;
      push_if_inside(m);
    }
  } else {
    for (std::int64_t i = static_cast<std::int64_t>(std::floor(clo(0))) - 1;
         i <= static_cast<std::int64_t>(std::ceil(chi(0))) + 1; ++i) {
      for (std::int64_t j = static_cast<std::int64_t>(std::floor(clo(1))) - 1;
           j <= static_cast<std::int64_t>(std::ceil(chi(1))) + 1; ++j) {
        IVec m(2);
        m << i, j;
        push_if_inside(m);
      }
    }
  }

  ps.points.resize(static_cast<Index>(pts.size()), d);
  ps.module_coords.resize(static_cast<Index>(pts.size()), d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ps.points.row(static_cast<Index>(i)) = pts[i].transpose();
    ps.module_coords.row(static_cast<Index>(i)) = coords[i].transpose();
  }

  if (d == 1) {
    ps.r = 0.5 * std::abs(basis(0, 0));
    ps.R = ps.r;
  } else {
    Mat red = gauss_reduce(basis);
    ps.r = 0.5 * red.col(0).norm();
    ps.R = covering_radius_2d(red);
  }
  std::ostringstream tag;
  tag << "lattice dim=" << d << " basis=" << basis.reshaped().transpose();
  ps.provenance = tag.str();
  return ps;
}

CutProjectScheme fibonacci_scheme() {
  CutProjectScheme s;
  s.total_dim = 2;
  s.physical_dim = 1;
  s.lattice_basis = Mat::Identity(2, 2);
  s.proj_phys.resize(1, 2);
  s.proj_phys << 1.0, kTau;
  s.proj_int.resize(1, 2);
  s.proj_int << 1.0, kTauC;
  s.window_lo = 0.0;
  s.window_hi = 1.0;
  s.window_closed_hi = false;
  return s;
}

PointSet model_set(const CutProjectScheme& scheme, const Box& phys_window) {
  const int n = scheme.total_dim;
  const int d = scheme.physical_dim;
  if (n - d != 1)
    throw std::invalid_argument("model_set: only internal dimension 1 (interval windows) is supported");
  if (d != 1)
    throw std::invalid_argument("model_set: only physical dimension 1 is supported");
  if (scheme.window_hi - scheme.window_lo <= 0)
    throw std::invalid_argument("model_set: degenerate window");
  if (phys_window.dim() != d) throw std::invalid_argument("model_set: window dimension mismatch");

  // Stacked map T : lattice coefficients -> (phys, internal).
  Mat T(n, n);
  T.topRows(d) = scheme.proj_phys * scheme.lattice_basis;
  T.bottomRows(n - d) = scheme.proj_int * scheme.lattice_basis;
  if (std::abs(T.determinant()) < 1e-12)
    throw std::invalid_argument("model_set: projections do not embed the lattice");
  Mat Tinv = T.inverse();

  // Coefficient bounds from the corners of phys_window x acceptance window.
  Vec clo = Vec::Constant(n, std::numeric_limits<double>::infinity());
  Vec chi = -clo;
  for (int m = 0; m < (1 << n); ++m) {
    Vec corner(n);
    corner(0) = (m & 1) ? phys_window.hi(0) : phys_window.lo(0);
    corner(1) = (m & 2) ? scheme.window_hi : scheme.window_lo;
    Vec c = Tinv * corner;
    clo = clo.cwiseMin(c);
    chi = chi.cwiseMax(c);
  }

  std::vector<double> phys;
  std::vector<IVec> coords;
  std::vector<double> internal_hits;
  const double wl = scheme.window_lo, wh = scheme.window_hi;
  for (std::int64_t i = static_cast<std::int64_t>(std::floor(clo(0))) - 1;
       i <= static_cast<std::int64_t>(std::ceil(chi(0))) + 1; ++i) {
    for (std::int64_t j = static_cast<std::int64_t>(std::floor(clo(1))) - 1;
         j <= static_cast<std::int64_t>(std::ceil(chi(1))) + 1; ++j) {
      IVec m(2);
      m << i, j;
      Vec pq = T * m.cast<double>();
      const double p = pq(0), q = pq(1);
      const bool accept = q >= wl && (scheme.window_closed_hi ? q <= wh : q < wh);
      if (!accept) continue;
      if (p < phys_window.lo(0) || p > phys_window.hi(0)) continue;
      phys.push_back(p);
      coords.push_back(m);
      internal_hits.push_back(q);
    }
  }

  // Order by physical coordinate for a canonical layout.
  std::vector<std::size_t> order(phys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return phys[a] < phys[b]; });

  PointSet ps;
  ps.dim = 1;
  ps.window = phys_window;
  ps.module_basis = scheme.proj_phys * scheme.lattice_basis;  // 1 x n
  ps.points.resize(static_cast<Index>(phys.size()), 1);
  ps.module_coords.resize(static_cast<Index>(phys.size()), n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    ps.points(static_cast<Index>(k), 0) = phys[order[k]];
    ps.module_coords.row(static_cast<Index>(k)) = coords[order[k]].transpose();
  }

  // Injectivity of the physical projection on the sampled range.
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  for (Index i = 0; i + 1 < ps.size(); ++i) {
    const double g = ps.points(i + 1, 0) - ps.points(i, 0);
    min_gap = std::min(min_gap, g);
    max_gap = std::max(max_gap, g);
  }
  if (ps.size() >= 2 && min_gap <= 1e-9)
    throw std::invalid_argument("model_set: physical projection not injective on the sample");

  // Statistical denseness of the internal images inside the window.
  if (!internal_hits.empty()) {
    const double len = wh - wl;
    const long bins = std::max<long>(1, static_cast<long>(std::floor(len / scheme.eps_fill)));
    if (static_cast<long>(internal_hits.size()) > 16 * bins) {
      std::vector<char> hit(static_cast<std::size_t>(bins), 0);
      for (double q : internal_hits) {
        long b = std::clamp<long>(static_cast<long>((q - wl) / len * bins), 0, bins - 1);
        hit[static_cast<std::size_t>(b)] = 1;
      }
      if (std::count(hit.begin(), hit.end(), 1) != bins)
        throw std::invalid_argument("model_set: internal images do not fill the window (eps_fill)");
    }
  }

  if (ps.size() >= 2) {
    ps.r = 0.5 * min_gap;
    ps.R = 0.5 * max_gap;
  }
  ps.claims_delone = true;
  std::ostringstream tag;
  tag << "model_set n=" << n << " window=[" << scheme.window_lo << ","
      << scheme.window_hi << (scheme.window_closed_hi ? "]" : ")");
  ps.provenance = tag.str();
  return ps;
}

SubstitutionRule fibonacci_rule() {
  SubstitutionRule r;
  r.alphabet = {"a", "b"};
  r.images = {{0, 1}, {0}};
  r.lengths.resize(2);
  r.lengths << kTau, 1.0;
  return r;
}

SubstitutionRule thue_morse_rule() {
  SubstitutionRule r;
  r.alphabet = {"a", "b"};
  r.images = {{0, 1}, {1, 0}};
  r.lengths = Vec::Ones(2);
  r.weights.resize(2);
  r.weights << Complex(1, 0), Complex(-1, 0);
  return r;
}

bool is_primitive(const SubstitutionRule& rule) {
  const int k = static_cast<int>(rule.alphabet.size());
  // M(a,b) = occurrences of a in image(b); primitive iff some power is positive.
  Eigen::MatrixXi M = Eigen::MatrixXi::Zero(k, k);
  for (int b = 0; b < k; ++b)
    for (int a : rule.images[b]) M(a, b) += 1;
  Eigen::MatrixXi P = Eigen::MatrixXi::Identity(k, k);
  for (int step = 0; step < 2 * k * k + 1; ++step) {
    P = (P * M).cwiseMin(1 << 20);  // saturate to avoid overflow; positivity is all we need
    if ((P.array() > 0).all()) return true;
  }
  return false;
}

PointSet substitution_chain(const SubstitutionRule& rule, int iterations, const std::string& axiom) {
  const int k = static_cast<int>(rule.alphabet.size());
  if (k == 0 || rule.lengths.size() != k)
    throw std::invalid_argument("substitution: malformed rule");
  for (const auto& img : rule.images)
    if (img.empty()) throw std::invalid_argument("substitution: empty image word");
  if ((rule.lengths.array() <= 0).any())
    throw std::invalid_argument("substitution: tile lengths must be positive");
  if (iterations < 0) throw std::invalid_argument("substitution: iterations must be >= 0");
  auto it = std::find(rule.alphabet.begin(), rule.alphabet.end(), axiom);
  if (it == rule.alphabet.end()) throw std::invalid_argument("substitution: unknown axiom letter");
  if (!is_primitive(rule)) throw std::invalid_argument("substitution: rule is not primitive");

  // Lengths must form a left Perron eigenvector: sum of image lengths = lambda * length.
  double lambda = 0.0;
  for (int a = 0; a < k; ++a) {
    double s = 0.0;
    for (int c : rule.images[a]) s += rule.lengths(c);
    const double ratio = s / rule.lengths(a);
    if (a == 0)
      lambda = ratio;
    else if (std::abs(ratio - lambda) > 1e-9)
      throw std::invalid_argument("substitution: lengths are not a Perron eigenvector of the rule");
  }

  std::vector<int> word = {static_cast<int>(it - rule.alphabet.begin())};
  for (int step = 0; step < iterations; ++step) {
    std::vector<int> next;
    next.reserve(word.size() * 2);
    for (int a : word) next.insert(next.end(), rule.images[a].begin(), rule.images[a].end());
    word.swap(next);
  }

  PointSet ps;
  ps.dim = 1;
  const Index n = static_cast<Index>(word.size());
  ps.points.resize(n, 1);
  ps.colors.assign(word.begin(), word.end());
  ps.color_names = rule.alphabet;
  if (rule.weights.size() == k) {
    ps.weights.resize(n);
    for (Index i = 0; i < n; ++i) ps.weights(i) = rule.weights(word[static_cast<std::size_t>(i)]);
  }
  // positions live in the module spanned by the tile lengths; the letter-count
  // vector of the prefix is an exact coordinate
  ps.module_basis = rule.lengths.transpose();
  ps.module_coords = IMat::Zero(n, k);
  IVec counts = IVec::Zero(k);
  double min_len = rule.lengths.minCoeff();
  double x = 0.0;
  for (Index i = 0; i < n; ++i) {
    x = rule.lengths.dot(counts.cast<double>());  // embed from exact coordinates
    ps.points(i, 0) = x;
    ps.module_coords.row(i) = counts.transpose();
    counts(word[static_cast<std::size_t>(i)]) += 1;
  }
  x = rule.lengths.dot(counts.cast<double>());
  ps.window = Box::interval(0.0, x - 0.5 * min_len);
  ps.r = 0.5 * min_len;
  ps.R = 0.5 * rule.lengths.maxCoeff();
  ps.claims_delone = true;
  std::ostringstream tag;
  tag << "substitution axiom=" << axiom << " iterations=" << iterations;
  ps.provenance = tag.str();
  return ps;
}

PointSet visible_points(long bound) {
  if (bound < 1) throw std::invalid_argument("visible_points: bound must be >= 1");
  PointSet ps;
  ps.dim = 2;
  ps.window = Box::square(-static_cast<double>(bound), static_cast<double>(bound));
  ps.module_basis = Mat::Identity(2, 2);
  std::vector<std::pair<long, long>> pts;
  for (long p = -bound; p <= bound; ++p) {
    for (long q = -bound; q <= bound; ++q) {
      if (std::gcd(std::abs(p), std::abs(q)) == 1) pts.emplace_back(p, q);
    }
  }
  const Index n = static_cast<Index>(pts.size());
  ps.points.resize(n, 2);
  ps.module_coords.resize(n, 2);
  for (Index i = 0; i < n; ++i) {
    ps.points(i, 0) = static_cast<double>(pts[static_cast<std::size_t>(i)].first);
    ps.points(i, 1) = static_cast<double>(pts[static_cast<std::size_t>(i)].second);
    ps.module_coords(i, 0) = pts[static_cast<std::size_t>(i)].first;
    ps.module_coords(i, 1) = pts[static_cast<std::size_t>(i)].second;
  }
  ps.r = 0.5;
  ps.R = 1.0;  // declared for testing; the set is not relatively dense
  ps.claims_delone = false;
  ps.provenance = "visible_points bound=" + std::to_string(bound);
  return ps;
}

PointSet euler_gap_set(int N) {
  if (N < 1) throw std::invalid_argument("euler_gap_set: N must be >= 1");
  const double e = std::exp(1.0);
  std::vector<double> a(static_cast<std::size_t>(N));
  double acc = 0.0, pw = 1.0;
  for (int i = 0; i < N; ++i) {
    acc += pw;  // a_n = 1 + e + ... + e^{n-1}
    a[static_cast<std::size_t>(i)] = acc;
    pw *= e;
  }
  PointSet ps;
  ps.dim = 1;
  const Index n = static_cast<Index>(2 * N);
  ps.points.resize(n, 1);
  for (int i = 0; i < N; ++i) {
    ps.points(i, 0) = -a[static_cast<std::size_t>(N - 1 - i)];
    ps.points(N + i, 0) = a[static_cast<std::size_t>(i)];
  }
  ps.window = Box::interval(-a.back() - 1.0, a.back() + 1.0);
  ps.r = 1.0;  // min gap is 2 (between -a_1 and a_1)
  ps.R = 1.0;
  ps.claims_delone = false;
  ps.provenance = "euler_gap_set N=" + std::to_string(N);
  return ps;
}

PointSet uniform_random_points(const Box& window, Index count, double r_declared,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  PointSet ps;
  ps.dim = window.dim();
  ps.window = window;
  ps.points.resize(count, ps.dim);
  for (Index i = 0; i < count; ++i)
    for (int a = 0; a < ps.dim; ++a)
      ps.points(i, a) = window.lo(a) + uni(rng) * (window.hi(a) - window.lo(a));
  ps.r = r_declared;
  ps.R = r_declared;
  ps.claims_delone = false;
  std::ostringstream tag;
  tag << "uniform_random count=" << count << " seed=" << seed;
  ps.provenance = tag.str();
  return ps;
}

PointSet coin_colored_integers(long lo, long hi, std::uint64_t seed) {
  if (hi < lo) throw std::invalid_argument("coin_colored_integers: empty range");
  std::mt19937_64 rng(seed);
  PointSet ps;
  ps.dim = 1;
  const Index n = static_cast<Index>(hi - lo + 1);
  ps.points.resize(n, 1);
  ps.module_basis = Mat::Identity(1, 1);
  ps.module_coords.resize(n, 1);
  ps.colors.resize(static_cast<std::size_t>(n));
  ps.color_names = {"a", "b"};
  for (Index i = 0; i < n; ++i) {
    ps.points(i, 0) = static_cast<double>(lo + i);
    ps.module_coords(i, 0) = lo + i;
    ps.colors[static_cast<std::size_t>(i)] = static_cast<int>(rng() & 1);
  }
  ps.window = Box::interval(static_cast<double>(lo) - 0.5, static_cast<double>(hi) + 0.5);
  ps.r = 0.5;
  ps.R = 0.5;
  ps.claims_delone = true;
  std::ostringstream tag;
  tag << "coin_colored_integers [" << lo << "," << hi << "] seed=" << seed;
  ps.provenance = tag.str();
  return ps;
}

}  // namespace flc
