#include "flc/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "flc/parallel.hpp"
#include "flc/spatial_index.hpp"

namespace flc {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

struct DiffKey {
  std::int64_t a = 0, b = 0;
  bool operator<(const DiffKey& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// --- direct intensity kernels ----------------------------------------------

void eval_block(const PointSet& ps, const Mat& k_grid, Index kb, Index ke, Vec& out) {
  const Index n = ps.size();
  const double vol = ps.window.volume();
  Vec theta(n), c(n), s(n);
  const bool weighted = ps.has_weights();
  Vec wr, wi;
  if (weighted) {
    wr = ps.weights.real();
    wi = ps.weights.imag();
  }
  for (Index kk = kb; kk < ke; ++kk) {
    theta.noalias() = ps.points * k_grid.row(kk).transpose();
    theta *= -kTwoPi;
    c = theta.array().cos();
    s = theta.array().sin();
    double re, im;
    if (!weighted) {
      re = c.sum();
      im = s.sum();
    } else {
      re = (wr.array() * c.array() - wi.array() * s.array()).sum();
      im = (wr.array() * s.array() + wi.array() * c.array()).sum();
    }
    out(kk) = (re * re + im * im) / vol;
  }
}

bool integer_grid_2d(const PointSet& ps) {
  if (ps.dim != 2 || !ps.has_module() || ps.module_coords.cols() != 2) return false;
  return (ps.module_basis - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0;
}

// Row-factorised evaluation for integer 2-D sets: group points by the second
// integer coordinate and reuse per-k1 row sums across the whole k list.
struct RowFactorised {
  std::vector<std::int64_t> row_y;
  std::vector<std::vector<std::pair<std::int64_t, Complex>>> rows;

  explicit RowFactorised(const PointSet& ps) {
    std::map<std::int64_t, std::vector<std::pair<std::int64_t, Complex>>> grouped;
    for (Index i = 0; i < ps.size(); ++i) {
      grouped[ps.module_coords(i, 1)].emplace_back(ps.module_coords(i, 0), ps.weight(i));
    }
    for (auto& [y, v] : grouped) {
      row_y.push_back(y);
      rows.push_back(std::move(v));
    }
  }

  std::vector<Complex> row_sums(double k1) const {
    std::vector<Complex> sums(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Complex acc(0, 0);
      for (const auto& [x, w] : rows[r]) {
        const double th = -kTwoPi * k1 * static_cast<double>(x);
        acc += w * Complex(std::cos(th), std::sin(th));
      }
      sums[r] = acc;
    }
    return sums;
  }
};

Vec eval_factorised(const PointSet& ps, const Mat& k_grid) {
  RowFactorised rf(ps);
  const double vol = ps.window.volume();
  Vec out(k_grid.rows());

  // group k indices by their first component
  std::map<double, std::vector<Index>> by_k1;
  for (Index kk = 0; kk < k_grid.rows(); ++kk) by_k1[k_grid(kk, 0)].push_back(kk);

  std::vector<std::pair<double, std::vector<Index>>> groups(by_k1.begin(), by_k1.end());
  parallel_chunks(static_cast<Index>(groups.size()), [&](Index gb, Index ge) {
    for (Index g = gb; g < ge; ++g) {
      const double k1 = groups[static_cast<std::size_t>(g)].first;
      const std::vector<Complex> sums = rf.row_sums(k1);
      for (Index kk : groups[static_cast<std::size_t>(g)].second) {
        const double k2 = k_grid(kk, 1);
        Complex acc(0, 0);
        for (std::size_t r = 0; r < rf.row_y.size(); ++r) {
          const double th = -kTwoPi * k2 * static_cast<double>(rf.row_y[r]);
          acc += sums[r] * Complex(std::cos(th), std::sin(th));
        }
        out(kk) = std::norm(acc) / vol;
      }
    }
  });
  return out;
}

// --- regression helper ------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  if (sxx <= 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (syy <= 0) {
    f.r2 = 0.0;  // flat response is not linear growth
    return f;
  }
  double ssres = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = f.intercept + f.slope * x[i];
    ssres += (y[i] - pred) * (y[i] - pred);
  }
  f.r2 = 1.0 - ssres / syy;
  return f;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Autocorrelation autocorrelation(const PointSet& ps, double z_max) {
  if (z_max <= 0) throw std::invalid_argument("autocorrelation: z_max must be positive");
  if ((ps.window.extent().array() < 2.0 * z_max).any())
    throw std::invalid_argument("autocorrelation: z_max exceeds half the window extent");

  const Box eroded = ps.window.eroded(z_max);
  SpatialIndex index(ps);

  std::vector<Index> inside;
  for (Index i = 0; i < ps.size(); ++i)
    if (eroded.contains(ps.point(i))) inside.push_back(i);

  std::map<DiffKey, Complex> acc;
  std::vector<char> in_eroded(static_cast<std::size_t>(ps.size()), 0);
  for (Index i : inside) in_eroded[static_cast<std::size_t>(i)] = 1;

  const bool modular = ps.has_module();
  std::vector<Index> hits;
  for (Index i : inside) {
    hits.clear();
    index.ball_append(ps.point(i), z_max + 1e-12, hits);
    for (Index j : hits) {
      if (!in_eroded[static_cast<std::size_t>(j)]) continue;  // both ends in the eroded window
      DiffKey key;
      if (modular) {
        key.a = ps.module_coords(i, 0) - ps.module_coords(j, 0);
        key.b = ps.module_coords.cols() > 1 ? ps.module_coords(i, 1) - ps.module_coords(j, 1) : 0;
      } else {
        key.a = quantize(ps.points(i, 0) - ps.points(j, 0));
        key.b = ps.dim == 2 ? quantize(ps.points(i, 1) - ps.points(j, 1)) : 0;
      }
      acc[key] += ps.weight(i) * std::conj(ps.weight(j));
    }
  }

  Autocorrelation out;
  out.z_max = z_max;
  out.normalizing_volume = eroded.volume();
  out.diffs.resize(static_cast<Index>(acc.size()), ps.dim);
  out.coeffs.resize(static_cast<Index>(acc.size()));
  Index row = 0;
  for (const auto& [key, val] : acc) {
    if (modular) {
      Vec diff(ps.dim);
      if (ps.module_coords.cols() == 1) {
        diff = ps.module_basis * Vec::Constant(1, static_cast<double>(key.a));
      } else {
        Vec m(2);
        m << static_cast<double>(key.a), static_cast<double>(key.b);
        diff = ps.module_basis * m;
      }
      out.diffs.row(row) = diff.transpose();
    } else {
      out.diffs(row, 0) = key.a * kQuantGrid;
      if (ps.dim == 2) out.diffs(row, 1) = key.b * kQuantGrid;
    }
    out.coeffs(row) = val / out.normalizing_volume;
    ++row;
  }
  return out;
}

Spectrum intensity(const PointSet& ps, const Mat& k_grid) {
  if (k_grid.cols() != ps.dim) throw std::invalid_argument("intensity: k dimension mismatch");
  Spectrum sp;
  sp.k_grid = k_grid;
  sp.volume = ps.window.volume();
  sp.n_points = static_cast<long>(ps.size());
  sp.intensity.resize(k_grid.rows());
  if (ps.size() == 0) {
    sp.intensity.setZero();
    return sp;
  }
  if (integer_grid_2d(ps) && k_grid.rows() >= 8) {
    sp.intensity = eval_factorised(ps, k_grid);
    return sp;
  }
  Vec& out = sp.intensity;
  parallel_chunks(k_grid.rows(), [&](Index b, Index e) { eval_block(ps, k_grid, b, e, out); });
  return sp;
}

double intensity_at(const PointSet& ps, const Vec& k) {
  Mat grid(1, ps.dim);
  grid.row(0) = k.transpose();
  Vec out(1);
  eval_block(ps, grid, 0, 1, out);
  return out(0);
}

PeakReport detect_peaks(const std::vector<Spectrum>& spectra) {
  if (spectra.size() < 3) throw std::invalid_argument("detect_peaks: need at least 3 volumes");
  for (std::size_t i = 0; i + 1 < spectra.size(); ++i) {
    if (!(spectra[i].volume < spectra[i + 1].volume))
      throw std::invalid_argument("detect_peaks: volumes must be strictly increasing");
    if (spectra[i].k_grid.rows() != spectra.back().k_grid.rows() ||
        (spectra[i].k_grid - spectra.back().k_grid).cwiseAbs().maxCoeff() != 0.0)
      throw std::invalid_argument("detect_peaks: spectra must share one k-grid");
  }
  const Spectrum& last = spectra.back();
  const Index nk = last.k_grid.rows();
  const int dim = static_cast<int>(last.k_grid.cols());

  // neighbourhood structure
  std::vector<std::vector<Index>> neighbours(static_cast<std::size_t>(nk));
  if (dim == 1) {
    std::vector<Index> order(static_cast<std::size_t>(nk));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return last.k_grid(a, 0) < last.k_grid(b, 0); });
    for (std::size_t p = 0; p < order.size(); ++p) {
      if (p > 0) neighbours[static_cast<std::size_t>(order[p])].push_back(order[p - 1]);
      if (p + 1 < order.size()) neighbours[static_cast<std::size_t>(order[p])].push_back(order[p + 1]);
    }
  } else {
    std::vector<double> k1s, k2s;
    for (Index i = 0; i < nk; ++i) {
      k1s.push_back(last.k_grid(i, 0));
      k2s.push_back(last.k_grid(i, 1));
    }
    std::sort(k1s.begin(), k1s.end());
    k1s.erase(std::unique(k1s.begin(), k1s.end()), k1s.end());
    std::sort(k2s.begin(), k2s.end());
    k2s.erase(std::unique(k2s.begin(), k2s.end()), k2s.end());
    if (static_cast<Index>(k1s.size() * k2s.size()) != nk)
      throw std::invalid_argument("detect_peaks: 2-D detection requires a product k-grid");
    std::map<std::pair<double, double>, Index> at;
    for (Index i = 0; i < nk; ++i) at[{last.k_grid(i, 0), last.k_grid(i, 1)}] = i;
    auto pos1 = [&](double v) {
      return std::lower_bound(k1s.begin(), k1s.end(), v) - k1s.begin();
    };
    auto pos2 = [&](double v) {
      return std::lower_bound(k2s.begin(), k2s.end(), v) - k2s.begin();
    };
    for (Index i = 0; i < nk; ++i) {
      const auto i1 = pos1(last.k_grid(i, 0));
      const auto i2 = pos2(last.k_grid(i, 1));
      for (int d1 = -1; d1 <= 1; ++d1) {
        for (int d2 = -1; d2 <= 1; ++d2) {
          if (!d1 && !d2) continue;
          const auto j1 = i1 + d1, j2 = i2 + d2;
          if (j1 < 0 || j2 < 0 || j1 >= static_cast<long>(k1s.size()) ||
              j2 >= static_cast<long>(k2s.size()))
            continue;
          neighbours[static_cast<std::size_t>(i)].push_back(
              at[{k1s[static_cast<std::size_t>(j1)], k2s[static_cast<std::size_t>(j2)]}]);
        }
      }
    }
  }

  std::vector<double> vols;
  for (const auto& sp : spectra) vols.push_back(sp.volume);
  std::vector<double> all_last(last.intensity.data(), last.intensity.data() + nk);
  const double med = median_of(all_last);

  PeakReport rep;
  std::vector<char> is_peak(static_cast<std::size_t>(nk), 0);
  for (Index i = 0; i < nk; ++i) {
    bool local_max = true;
    for (Index j : neighbours[static_cast<std::size_t>(i)]) {
      if (last.intensity(j) >= last.intensity(i)) {
        local_max = false;
        break;
      }
    }
    if (!local_max) continue;
    if (!(last.intensity(i) > 4.0 * med)) continue;  // below the background floor
    std::vector<double> ys;
    for (const auto& sp : spectra) ys.push_back(sp.intensity(i));
    LineFit f = fit_line(vols, ys);
    if (f.r2 >= 0.99 && f.slope > 0) {
      Peak pk;
      pk.k = last.k_grid.row(i).transpose();
      pk.intensity = f.slope;
      pk.scaling_r2 = f.r2;
      rep.peaks.push_back(pk);
      is_peak[static_cast<std::size_t>(i)] = 1;
    }
  }

  std::vector<double> off;
  double peak_sum = 0.0, total_sum = 0.0;
  for (Index i = 0; i < nk; ++i) {
    total_sum += last.intensity(i);
    if (is_peak[static_cast<std::size_t>(i)])
      peak_sum += last.intensity(i);
    else
      off.push_back(last.intensity(i) / last.volume);
  }
  rep.background_level = median_of(off);
  rep.pure_point_fraction = total_sum > 0 ? peak_sum / total_sum : 0.0;
  std::sort(rep.peaks.begin(), rep.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.intensity > b.intensity; });
  return rep;
}

namespace {

PointSet centred_crop(const PointSet& ps, double fraction) {
  if (fraction >= 1.0) return ps;
  const Vec c = ps.window.center();
  const Vec half = 0.5 * fraction * ps.window.extent();
  return crop(ps, Box(c - half, c + half));
}

Mat product_grid(const std::vector<double>& k1, const std::vector<double>& k2) {
  Mat grid(static_cast<Index>(k1.size() * k2.size()), 2);
  Index row = 0;
  for (double a : k1)
    for (double b : k2) {
      grid(row, 0) = a;
      grid(row, 1) = b;
      ++row;
    }
  return grid;
}

}  // namespace

DiagnosticReport pure_point_diagnostic(const PointSet& ps, const DiagnosticConfig& cfg) {
  if (cfg.volume_fractions.size() < 3)
    throw std::invalid_argument("pure_point_diagnostic: need at least 3 nested volumes");

  DiagnosticReport out;
  const int dim = ps.dim;
  const bool periodic = integer_grid_2d(ps);

  // nested centred volumes
  std::vector<PointSet> crops;
  for (double f : cfg.volume_fractions) crops.push_back(centred_crop(ps, f));

  // base sampling grid (irrational offsets avoid exact alignment with peaks)
  const double phi1 = 0.38196601125010515;
  const double phi2 = 0.23606797749978969;
  Mat grid;
  double cell_vol = 0.0;
  std::vector<double> axis1, axis2;
  if (dim == 1) {
    const double dk = cfg.k_max / cfg.n_k;
    for (int i = 0; i < cfg.n_k; ++i) axis1.push_back((i + phi1) * dk);
    grid.resize(cfg.n_k, 1);
    for (int i = 0; i < cfg.n_k; ++i) grid(i, 0) = axis1[static_cast<std::size_t>(i)];
    cell_vol = dk;
  } else {
    const int side = std::max(8, static_cast<int>(std::floor(std::sqrt(double(cfg.n_k)))));
    const double extent = periodic ? 1.0 : cfg.k_max;
    const double dk = extent / side;
    for (int i = 0; i < side; ++i) axis1.push_back((i + phi1) * dk);
    for (int i = 0; i < side; ++i) axis2.push_back((i + phi2) * dk);
    grid = product_grid(axis1, axis2);
    cell_vol = dk * dk;
  }

  std::vector<Spectrum> spectra;
  for (const auto& c : crops) spectra.push_back(intensity(c, grid));

  // refinement volume: the largest crop within the evaluation budget
  std::size_t refine_at = 0;
  for (std::size_t i = 0; i < crops.size(); ++i)
    if (crops[i].size() <= cfg.refine_points_budget) refine_at = i;
  const PointSet& fine_ps = crops[refine_at];
  const double L_ref = fine_ps.window.extent().minCoeff();

  // Candidates: raw local maxima of the sharpest sampled spectrum above the
  // background floor, plus the DC spot. The volume-scaling criterion is
  // applied only after position refinement: a fixed off-peak grid node sees a
  // kernel whose width changes with the volume, so grid values near (but not
  // at) a Bragg position do not scale linearly.
  const Spectrum& sharpest = spectra.back();
  std::vector<double> all_vals(sharpest.intensity.data(),
                               sharpest.intensity.data() + sharpest.intensity.size());
  const double floor = 4.0 * median_of(all_vals);
  std::vector<std::pair<double, Index>> cands;
  const Index nk_total = grid.rows();
  for (Index i = 0; i < nk_total; ++i) {
    if (!(sharpest.intensity(i) > floor)) continue;
    bool local_max = true;
    if (dim == 1) {
      if (i > 0 && sharpest.intensity(i - 1) >= sharpest.intensity(i)) local_max = false;
      if (i + 1 < nk_total && sharpest.intensity(i + 1) >= sharpest.intensity(i)) local_max = false;
    } else {
      const Index side = static_cast<Index>(axis2.size());
      const Index i1 = i / side, i2 = i % side;
      for (Index d1 = -1; d1 <= 1 && local_max; ++d1) {
        for (Index d2 = -1; d2 <= 1; ++d2) {
          if (!d1 && !d2) continue;
          const Index j1 = i1 + d1, j2 = i2 + d2;
          if (j1 < 0 || j2 < 0 || j1 >= static_cast<Index>(axis1.size()) || j2 >= side) continue;
          if (sharpest.intensity(j1 * side + j2) >= sharpest.intensity(i)) {
            local_max = false;
            break;
          }
        }
      }
    }
    if (local_max) cands.emplace_back(sharpest.intensity(i), i);
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (cands.size() > 256) cands.resize(256);

  std::vector<Vec> candidates;
  candidates.push_back(Vec::Zero(dim));
  for (const auto& [val, idx] : cands) {
    (void)val;
    candidates.push_back(grid.row(idx).transpose());
  }

  // position refinement by local fine scans around each candidate
  const double grid_step = dim == 1 ? cell_vol : std::sqrt(cell_vol);
  auto refine_1d_axis = [&](Vec k, int axis) {
    const double half = grid_step;
    const int m = 64;
    std::vector<double> vals;
    Mat fine(2 * m + 1, dim);
    for (int i = -m; i <= m; ++i) {
      Vec kk = k;
      kk(axis) += half * i / m;
      fine.row(i + m) = kk.transpose();
    }
    Spectrum sp = intensity(fine_ps, fine);
    Index best = 0;
    sp.intensity.maxCoeff(&best);
    Vec out = fine.row(best).transpose();
    // parabolic polish
    if (best > 0 && best + 1 < sp.intensity.size()) {
      const double y0 = sp.intensity(best - 1), y1 = sp.intensity(best), y2 = sp.intensity(best + 1);
      const double denom = y0 - 2 * y1 + y2;
      if (std::abs(denom) > 1e-300) {
        const double shift = 0.5 * (y0 - y2) / denom;
        if (std::abs(shift) <= 1.0) out(axis) += shift * (half / m);
      }
    }
    return out;
  };

  std::vector<Vec> refined;
  for (const Vec& c : candidates) {
    Vec k = c;
    for (int pass = 0; pass < (dim == 1 ? 1 : 2); ++pass)
      for (int axis = 0; axis < dim; ++axis) k = refine_1d_axis(k, axis);
    refined.push_back(k);
  }

  // dedupe refined candidates within a few kernel widths
  const double merge_tol = 3.0 / L_ref;
  std::vector<Vec> unique_peaks;
  for (const Vec& k : refined) {
    bool dup = false;
    for (const Vec& u : unique_peaks) {
      if ((k - u).lpNorm<Eigen::Infinity>() <= merge_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) unique_peaks.push_back(k);
  }

  // slopes across all volumes at the refined positions
  Mat peak_grid(static_cast<Index>(unique_peaks.size()), dim);
  for (std::size_t i = 0; i < unique_peaks.size(); ++i)
    peak_grid.row(static_cast<Index>(i)) = unique_peaks[i].transpose();
  std::vector<Vec> peak_intensities;
  for (const auto& c : crops) peak_intensities.push_back(intensity(c, peak_grid).intensity);
  std::vector<double> vols;
  for (const auto& c : crops) vols.push_back(c.window.volume());

  // peak masses: integral of the refined-volume intensity over a fine window
  // (4 kernel widths; wider windows would overlap dense neighbouring peaks)
  const double halfwin = 4.0 / L_ref;
  const int n_fine = 48;  // trapezoid nodes per axis
  auto peak_mass = [&](const Vec& k) {
    if (dim == 1) {
      Mat fine(n_fine + 1, 1);
      for (int i = 0; i <= n_fine; ++i)
        fine(i, 0) = k(0) - halfwin + 2.0 * halfwin * i / n_fine;
      Vec v = intensity(fine_ps, fine).intensity;
      double sum = 0.5 * (v(0) + v(n_fine));
      for (int i = 1; i < n_fine; ++i) sum += v(i);
      return sum * (2.0 * halfwin / n_fine);
    }
    std::vector<double> f1, f2;
    for (int i = 0; i <= n_fine; ++i) {
      f1.push_back(k(0) - halfwin + 2.0 * halfwin * i / n_fine);
      f2.push_back(k(1) - halfwin + 2.0 * halfwin * i / n_fine);
    }
    Vec v = intensity(fine_ps, product_grid(f1, f2)).intensity;
    const double h = 2.0 * halfwin / n_fine;
    double sum = 0.0;
    Index row = 0;
    for (int i = 0; i <= n_fine; ++i) {
      for (int j = 0; j <= n_fine; ++j, ++row) {
        double w = 1.0;
        if (i == 0 || i == n_fine) w *= 0.5;
        if (j == 0 || j == n_fine) w *= 0.5;
        sum += w * v(row);
      }
    }
    return sum * h * h;
  };

  PeakReport& rep = out.report;
  for (std::size_t i = 0; i < unique_peaks.size(); ++i) {
    std::vector<double> ys;
    for (const auto& pv : peak_intensities) ys.push_back(pv(static_cast<Index>(i)));
    LineFit f = fit_line(vols, ys);
    if (!(f.r2 >= cfg.r2_threshold && f.slope > 0)) continue;
    Peak pk;
    pk.k = unique_peaks[i];
    pk.intensity = f.slope;
    pk.scaling_r2 = f.r2;
    pk.mass = peak_mass(pk.k);
    rep.peaks.push_back(pk);
  }
  std::sort(rep.peaks.begin(), rep.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.intensity > b.intensity; });

  // background integral on the refinement spectrum, peak windows excluded
  const Spectrum& fine_sp = spectra[refine_at];
  double background_integral = 0.0;
  std::vector<double> off_values;
  for (Index i = 0; i < grid.rows(); ++i) {
    bool inside_peak = false;
    for (const Peak& p : rep.peaks) {
      if ((grid.row(i).transpose() - p.k).lpNorm<Eigen::Infinity>() <= halfwin + grid_step) {
        inside_peak = true;
        break;
      }
    }
    if (!inside_peak) {
      background_integral += fine_sp.intensity(i) * cell_vol;
      off_values.push_back(fine_sp.intensity(i) / fine_sp.volume);
    }
  }
  rep.background_level = median_of(off_values);

  double peak_mass_sum = 0.0;
  for (const Peak& p : rep.peaks) peak_mass_sum += p.mass;
  out.total_mass = peak_mass_sum + background_integral;
  rep.pure_point_fraction =
      out.total_mass > 0 ? std::clamp(peak_mass_sum / out.total_mass, 0.0, 1.0) : 0.0;

  // background stability across volumes (median per-volume level)
  std::vector<double> meds;
  for (const auto& sp : spectra) {
    std::vector<double> v(sp.intensity.data(), sp.intensity.data() + sp.intensity.size());
    meds.push_back(median_of(v) / sp.volume);
  }
  const double tiny = 1e-15;
  out.background_ratio = (meds.back() + tiny) / (meds.front() + tiny);
  const bool stable = out.background_ratio <= cfg.background_stability &&
                      out.background_ratio >= 1.0 / cfg.background_stability;

  if (rep.pure_point_fraction >= cfg.pure_point_threshold) {
    out.verdict = DiffractionVerdict::consistent_pure_point;
  } else if (rep.pure_point_fraction <= cfg.continuous_threshold && stable) {
    out.verdict = DiffractionVerdict::continuous_component;
    out.note = "background stable while peak mass fraction stays low";
  } else {
    out.verdict = DiffractionVerdict::inconclusive;
  }
  return out;
}

}  // namespace flc
