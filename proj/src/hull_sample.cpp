#include "flc/hull_sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flc/patches.hpp"

namespace flc {

HullSample make_hull_sample(const PointSet& base, const Mat& vectors, double box_radius) {
  if (vectors.cols() != base.dim) throw std::invalid_argument("hull sample: vector dim mismatch");
  HullSample hs;
  hs.base = base;
  hs.common_box = base.dim == 1 ? Box::interval(-box_radius, box_radius)
                                : Box::square(-box_radius, box_radius);
  std::vector<Index> kept;
  for (Index i = 0; i < vectors.rows(); ++i) {
    const Vec v = vectors.row(i).transpose();
    PointSet shifted = translate(base, v);
    if (!shifted.window.contains(hs.common_box, 1e-9)) continue;
    hs.elements.push_back(crop(shifted, hs.common_box));
    kept.push_back(i);
  }
  hs.translation_vectors.resize(static_cast<Index>(kept.size()), base.dim);
  for (std::size_t k = 0; k < kept.size(); ++k)
    hs.translation_vectors.row(static_cast<Index>(k)) = vectors.row(kept[k]);
  return hs;
}

SeparatedResult separated_set(const HullSample& hs, double D, double eps, double resolution) {
  if (eps <= 0) throw std::invalid_argument("separated_set: eps must be positive");
  SeparatedResult res;
  for (std::size_t i = 0; i < hs.elements.size(); ++i) {
    bool separated = true;
    for (int j : res.indices) {
      MetricBracket br = orbit_metric(hs.elements[i], hs.elements[static_cast<std::size_t>(j)], D,
                                      resolution, eps);
      if (!(br.lower > eps)) {
        separated = false;
        break;
      }
    }
    if (separated) res.indices.push_back(static_cast<int>(i));
  }
  res.n_hat = static_cast<long>(res.indices.size());
  return res;
}

std::vector<PointSet> patch_representatives(const PointSet& ps, double D, double box_radius) {
  PatchTable table = extract_patches(ps, D);
  std::vector<PointSet> reps;
  for (const auto& [key, entry] : table.entries) {
    (void)key;
    if (entry.best_margin < box_radius) continue;
    PointSet rep = crop(translate(ps, entry.best_center),
                        ps.dim == 1 ? Box::interval(-box_radius, box_radius)
                                    : Box::square(-box_radius, box_radius));
    reps.push_back(std::move(rep));
  }
  return reps;
}

long cover_count_eps_half(double R, double eps, int dim) {
  // Balls of radius eps/2 contain cells of edge eps/sqrt(d); count the cells
  // of that grid that touch B_R.
  const double edge = eps / std::sqrt(static_cast<double>(dim));
  const long cells_half = static_cast<long>(std::ceil(R / edge)) + 1;
  if (dim == 1) return 2 * cells_half;
  auto axis_dist = [edge](long i) {
    // distance from 0 to the interval [i*edge, (i+1)*edge]
    if (i < 0 && i + 1 > 0) return 0.0;
    return std::min(std::abs(i * edge), std::abs((i + 1) * edge));
  };
  long count = 0;
  for (long i = -cells_half; i < cells_half; ++i) {
    for (long j = -cells_half; j < cells_half; ++j) {
      const double dx = axis_dist(i), dy = axis_dist(j);
      if (dx * dx + dy * dy <= R * R) ++count;
    }
  }
  return count;
}

std::vector<TheoremCheckRecord> check_htop_equals_hpc(const PointSet& ps,
                                                      const std::vector<double>& D_list,
                                                      double eps, double resolution,
                                                      int sample_cap) {
  const double e0 = epsilon0(ps.r, ps.R);
  std::vector<TheoremCheckRecord> records;

  for (double D : D_list) {
    TheoremCheckRecord rec;
    rec.D = D;
    rec.eps = eps;
    rec.eps0 = e0;
    rec.separation_applicable = eps < e0;

    const double box_radius = D + 2.0 * ps.R + 1.0 / std::min(eps, e0) + 6.0;

    // (i) representatives of the D-patches around 0 are pairwise separated
    std::vector<PointSet> reps = patch_representatives(ps, D, box_radius);
    rec.patch_count_D = patch_count(ps, D);
    rec.min_pairwise_lower = kMetricCap;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        MetricBracket br = orbit_metric(reps[i], reps[j], D, resolution, e0 - resolution);
        rec.min_pairwise_lower = std::min(rec.min_pairwise_lower, br.lower);
      }
    }
    if (reps.size() <= 1) rec.min_pairwise_lower = kMetricCap;
    rec.separation_check = rec.min_pairwise_lower >= e0 - resolution - 1e-12;

    // (ii) greedy N_hat against the covering bound M(eps) * card(p(rho(D)))
    const double rho_D = rho(D, ps.R, eps);
    rec.patch_count_rhoD = patch_count(ps, rho_D);
    rec.m_eps = cover_count_eps_half(ps.R, eps, ps.dim);

    // sample: representatives first, then a deterministic spread of translates
    std::vector<PointSet> sample = reps;
    const Index stride = std::max<Index>(1, ps.size() / std::max(1, sample_cap));
    for (Index i = 0; i < ps.size() && static_cast<int>(sample.size()) < 2 * sample_cap;
         i += stride) {
      const Vec x = ps.point(i);
      PointSet shifted = translate(ps, x);
      const Box want = ps.dim == 1 ? Box::interval(-box_radius, box_radius)
                                   : Box::square(-box_radius, box_radius);
      if (!shifted.window.contains(want, 1e-9)) continue;
      sample.push_back(crop(shifted, want));
    }
    HullSample hs;
    hs.base = ps;
    hs.elements = std::move(sample);
    hs.common_box = ps.dim == 1 ? Box::interval(-box_radius, box_radius)
                                : Box::square(-box_radius, box_radius);
    SeparatedResult sep = separated_set(hs, D, eps, resolution);
    rec.n_hat = sep.n_hat;
    rec.covering_check =
        rec.n_hat <= rec.m_eps * rec.patch_count_rhoD;

    records.push_back(rec);
  }
  return records;
}

}  // namespace flc
