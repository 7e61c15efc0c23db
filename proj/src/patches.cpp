#include "flc/patches.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "flc/parallel.hpp"
#include "flc/spatial_index.hpp"

namespace flc {

namespace {

constexpr double kBallSlack = 1e-12;

void put_i64(unsigned char* dst, std::int64_t v) {
  // order-preserving big-endian encoding
  std::uint64_t u = static_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << 63);
  for (int i = 7; i >= 0; --i) {
    dst[i] = static_cast<unsigned char>(u & 0xff);
    u >>= 8;
  }
}

struct RowCodec {
  const PointSet& ps;
  bool use_module;
  bool use_colors;
  bool use_weights;
  int ints_per_row;
  std::size_t stride;

  explicit RowCodec(const PointSet& s)
      : ps(s),
        use_module(s.has_module()),
        use_colors(s.has_colors()),
        use_weights(!s.has_colors() && s.has_weights()) {
    ints_per_row = use_module ? static_cast<int>(s.module_coords.cols()) : s.dim;
    stride = static_cast<std::size_t>(ints_per_row) * 8 + (use_colors ? 4 : 0) +
             (use_weights ? 16 : 0);
  }

  // Canonical offset of point j relative to centre i (deterministic floats).
  void canonical_offset(Index i, Index j, double* out) const {
    if (use_module) {
      for (int a = 0; a < ps.dim; ++a) {
        double acc = 0.0;
        for (Index c = 0; c < ps.module_coords.cols(); ++c)
          acc += ps.module_basis(a, c) *
                 static_cast<double>(ps.module_coords(j, c) - ps.module_coords(i, c));
        out[a] = acc;
      }
    } else {
      for (int a = 0; a < ps.dim; ++a)
        out[a] = quantize(ps.points(j, a) - ps.points(i, a)) * kQuantGrid;
    }
  }

  void encode(Index i, Index j, unsigned char* dst) const {
    std::size_t pos = 0;
    if (use_module) {
      for (Index c = 0; c < ps.module_coords.cols(); ++c) {
        put_i64(dst + pos, ps.module_coords(j, c) - ps.module_coords(i, c));
        pos += 8;
      }
    } else {
      for (int a = 0; a < ps.dim; ++a) {
        put_i64(dst + pos, quantize(ps.points(j, a) - ps.points(i, a)));
        pos += 8;
      }
    }
    if (use_colors) {
      std::uint32_t c = static_cast<std::uint32_t>(ps.colors[static_cast<std::size_t>(j)]);
      for (int b = 3; b >= 0; --b) {
        dst[pos + b] = static_cast<unsigned char>(c & 0xff);
        c >>= 8;
      }
      pos += 4;
    }
    if (use_weights) {
      put_i64(dst + pos, quantize(ps.weights(j).real()));
      put_i64(dst + pos + 8, quantize(ps.weights(j).imag()));
      pos += 16;
    }
  }
};

struct KeyBuilder {
  const RowCodec& codec;
  const SpatialIndex& index;
  double D;
  std::vector<Index> hits;
  std::vector<unsigned char> flat;
  std::vector<int> order;

  KeyBuilder(const RowCodec& c, const SpatialIndex& idx, double radius)
      : codec(c), index(idx), D(radius) {}

  // Builds the canonical key of the patch at centre i into `key`; also exposes
  // the kept neighbour list (canonical order) through `kept`.
  void build(Index i, std::string& key, std::vector<Index>* kept = nullptr) {
    hits.clear();
    index.ball_append(codec.ps.points.row(i).transpose(), D + 2e-9, hits);
    double off[2] = {0.0, 0.0};
    const double lim2 = (D + kBallSlack) * (D + kBallSlack);
    std::vector<Index> keep;
    keep.reserve(hits.size());
    for (Index j : hits) {
      codec.canonical_offset(i, j, off);
      double n2 = off[0] * off[0];
      if (codec.ps.dim == 2) n2 += off[1] * off[1];
      if (n2 <= lim2) keep.push_back(j);
    }
    const std::size_t stride = codec.stride;
    flat.resize(keep.size() * stride);
    for (std::size_t k = 0; k < keep.size(); ++k)
      codec.encode(i, keep[k], flat.data() + k * stride);
    order.resize(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::memcmp(flat.data() + a * stride, flat.data() + b * stride, stride) < 0;
    });
    key.clear();
    key.reserve(keep.size() * stride);
    for (int k : order)
      key.append(reinterpret_cast<const char*>(flat.data() + static_cast<std::size_t>(k) * stride),
                 stride);
    if (kept) {
      kept->clear();
      for (int k : order) kept->push_back(keep[static_cast<std::size_t>(k)]);
    }
  }
};

std::vector<Index> admissible_centers(const PointSet& ps, double D) {
  if (ps.window.eroded(D).empty()) throw std::runtime_error("radius exceeds sample");
  std::vector<Index> centers;
  for (Index i = 0; i < ps.size(); ++i) {
    if (ps.window.margin(ps.points.row(i).transpose()) >= D) centers.push_back(i);
  }
  return centers;
}

struct Key128 {
  std::uint64_t a = 0, b = 0;
  bool operator==(const Key128& o) const { return a == o.a && b == o.b; }
};
struct Key128Hash {
  std::size_t operator()(const Key128& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ULL); }
};

Key128 fnv128(const std::string& s) {
  std::uint64_t h1 = 0xcbf29ce484222325ULL, h2 = 0x84222325cbf29ce4ULL;
  for (unsigned char c : s) {
    h1 = (h1 ^ c) * 0x100000001b3ULL;
    h2 = (h2 ^ c) * 0x100000001b3ULL;
    h2 ^= h2 >> 29;
  }
  return {h1, h2};
}

}  // namespace

CenterPatches patch_keys(const PointSet& ps, double D) {
  if (D <= 0) throw std::invalid_argument("patch radius must be positive");
  CenterPatches out;
  out.centers = admissible_centers(ps, D);
  out.keys.resize(out.centers.size());
  SpatialIndex index(ps);
  RowCodec codec(ps);
  parallel_chunks(static_cast<Index>(out.centers.size()), [&](Index b, Index e) {
    KeyBuilder kb(codec, index, D);
    for (Index k = b; k < e; ++k) kb.build(out.centers[static_cast<std::size_t>(k)],
                                           out.keys[static_cast<std::size_t>(k)]);
  });
  return out;
}

PatchTable extract_patches(const PointSet& ps, double D) {
  CenterPatches cp = patch_keys(ps, D);
  PatchTable table;
  table.radius = D;
  table.n_centers = static_cast<long>(cp.centers.size());

  for (std::size_t k = 0; k < cp.centers.size(); ++k) {
    const Index i = cp.centers[k];
    const double margin = ps.window.margin(ps.points.row(i).transpose());
    auto [it, inserted] = table.entries.try_emplace(cp.keys[k]);
    PatchEntry& entry = it->second;
    ++entry.count;
    if (inserted) {
      entry.first_center = ps.point(i);
      entry.best_center = ps.point(i);
      entry.best_margin = margin;
    } else if (margin > entry.best_margin) {
      entry.best_margin = margin;
      entry.best_center = ps.point(i);
    }
  }

  // Materialise patch offsets from one representative centre per entry.
  SpatialIndex index(ps);
  RowCodec codec(ps);
  KeyBuilder kb(codec, index, D);
  std::vector<Index> kept;
  for (std::size_t k = 0; k < cp.centers.size(); ++k) {
    auto it = table.entries.find(cp.keys[k]);
    if (it->second.patch.offsets.rows() > 0) continue;
    std::string key;
    kb.build(cp.centers[k], key, &kept);
    Patch& p = it->second.patch;
    p.radius = D;
    p.canonical_key = key;
    p.offsets.resize(static_cast<Index>(kept.size()), ps.dim);
    double off[2];
    for (std::size_t j = 0; j < kept.size(); ++j) {
      codec.canonical_offset(cp.centers[k], kept[j], off);
      for (int a = 0; a < ps.dim; ++a) p.offsets(static_cast<Index>(j), a) = off[a];
    }
    if (ps.has_colors()) {
      p.colors.clear();
      for (Index j : kept) p.colors.push_back(ps.colors[static_cast<std::size_t>(j)]);
    }
  }
  return table;
}

long patch_count(const PointSet& ps, double D) {
  // counting path: hash the keys, never store a table
  if (D <= 0) throw std::invalid_argument("patch radius must be positive");
  std::vector<Index> centers = admissible_centers(ps, D);
  SpatialIndex index(ps);
  RowCodec codec(ps);
  std::unordered_set<Key128, Key128Hash> seen;
  std::mutex mu;
  parallel_chunks(static_cast<Index>(centers.size()), [&](Index b, Index e) {
    KeyBuilder kb(codec, index, D);
    std::string key;
    std::unordered_set<Key128, Key128Hash> local;
    for (Index k = b; k < e; ++k) {
      kb.build(centers[static_cast<std::size_t>(k)], key);
      local.insert(fnv128(key));
    }
    std::lock_guard<std::mutex> lk(mu);
    seen.merge(local);
  });
  return static_cast<long>(seen.size());
}

EntropyCurve entropy_estimate(const PointSet& ps, const std::vector<double>& radii) {
  if (radii.size() < 3) throw std::invalid_argument("entropy_estimate: need at least 3 radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (radii[i + 1] <= radii[i])
      throw std::invalid_argument("entropy_estimate: radii must be strictly increasing");
  EntropyCurve curve;
  for (double n : radii) {
    EntropyPoint pt;
    pt.radius = n;
    pt.count = patch_count(ps, n);
    pt.value = pt.count > 0 ? std::log(static_cast<double>(pt.count)) / ball_volume(ps.dim, n) : 0.0;
    curve.points.push_back(pt);
  }
  const std::size_t tail = (curve.points.size() + 2) / 3;
  for (std::size_t i = curve.points.size() - tail; i < curve.points.size(); ++i)
    curve.limsup_proxy = std::max(curve.limsup_proxy, curve.points[i].value);
  return curve;
}

FrequencyReport patch_frequencies(const PointSet& ps, double D, const std::vector<Box>& anchors) {
  if (anchors.empty()) throw std::invalid_argument("patch_frequencies: no anchors");
  CenterPatches cp = patch_keys(ps, D);

  FrequencyReport rep;
  for (const Box& anchor : anchors) {
    if (anchor.eroded(D).empty())
      throw std::invalid_argument("patch_frequencies: anchor too small for D");
    std::map<std::string, double> freq;
    long total = 0;
    for (std::size_t k = 0; k < cp.centers.size(); ++k) {
      const Vec x = ps.point(cp.centers[k]);
      if (!anchor.contains(x)) continue;
      freq[cp.keys[k]] += 1.0;
      ++total;
    }
    if (total == 0) throw std::invalid_argument("patch_frequencies: anchor without admissible centers");
    for (auto& [key, v] : freq) v /= static_cast<double>(total);
    rep.anchor_frequencies.push_back(std::move(freq));
  }

  for (std::size_t i = 0; i < rep.anchor_frequencies.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.anchor_frequencies.size(); ++j) {
      const auto& f = rep.anchor_frequencies[i];
      const auto& g = rep.anchor_frequencies[j];
      double tv = 0.0;
      for (const auto& [key, v] : f) {
        auto it = g.find(key);
        tv += std::abs(v - (it == g.end() ? 0.0 : it->second));
      }
      for (const auto& [key, v] : g) {
        if (f.find(key) == f.end()) tv += v;
      }
      rep.max_total_variation = std::max(rep.max_total_variation, 0.5 * tv);
    }
  }
  return rep;
}

std::string patch_table_json(const PatchTable& table) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"D\":" << table.radius << ",\"n_centers\":" << table.n_centers << ",\"patches\":[";
  bool first_entry = true;
  for (const auto& [key, entry] : table.entries) {
    if (!first_entry) os << ",";
    first_entry = false;
    os << "{\"key\":\"";
    static const char* hexd = "0123456789abcdef";
    for (unsigned char c : key) os << hexd[c >> 4] << hexd[c & 0xf];
    os << "\",\"count\":" << entry.count << ",\"points\":[";
    for (Index i = 0; i < entry.patch.offsets.rows(); ++i) {
      if (i) os << ",";
      os << "[";
      for (Index a = 0; a < entry.patch.offsets.cols(); ++a) {
        if (a) os << ",";
        os << entry.patch.offsets(i, a);
      }
      os << "]";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace flc
