#ifndef FLC_PATCHES_HPP
#define FLC_PATCHES_HPP

#include <map>
#include <string>
#include <vector>

#include "flc/point_set.hpp"

namespace flc {

/// A D-patch: the cluster (-x + omega) of points within the closed ball B_D,
/// translated so the centre sits at the origin.
///
/// Patch identity is the canonical byte key: per-point encodings (exact module
/// coordinate differences when available, else offsets quantised to the 1e-9
/// grid, plus the colour id when colours are present) sorted lexicographically
/// and concatenated. Weights enter the key via quantised values only when no
/// colours are attached; the shipped weighted generators colour their points.
struct Patch {
  double radius = 0.0;
  Mat offsets;              // k x dim, canonical order, includes the zero row
  std::vector<int> colors;  // aligned, or empty
  std::string canonical_key;
};

struct PatchEntry {
  Patch patch;
  long count = 0;
  Vec first_center;
  Vec best_center;          // admissible centre with the largest window margin
  double best_margin = 0.0;
};

struct PatchTable {
  double radius = 0.0;
  long n_centers = 0;
  std::map<std::string, PatchEntry> entries;  // canonical (byte) order
};

/// Patch key of every admissible centre (those x with B_D(x) inside the window).
struct CenterPatches {
  std::vector<Index> centers;
  std::vector<std::string> keys;
};
CenterPatches patch_keys(const PointSet& ps, double D);

/// Full deduplicated patch table with occurrence counts.
/// Throws std::runtime_error("radius exceeds sample") when the window eroded
/// by D is empty.
PatchTable extract_patches(const PointSet& ps, double D);

/// card(p_omega(D)); memory-light (hash-based counting, no table is stored).
long patch_count(const PointSet& ps, double D);

struct EntropyPoint {
  double radius = 0.0;
  long count = 0;
  double value = 0.0;  // log(count) / |B_radius|
};
struct EntropyCurve {
  std::vector<EntropyPoint> points;
  double limsup_proxy = 0.0;  // max over the last third of the radii
};

/// Finite-sample patch counting entropy curve. Needs >= 3 radii, ascending.
EntropyCurve entropy_estimate(const PointSet& ps, const std::vector<double>& radii);

struct FrequencyReport {
  std::vector<std::map<std::string, double>> anchor_frequencies;
  double max_total_variation = 0.0;
};

/// Per-anchor patch frequencies and the largest pairwise total-variation
/// distance between anchors; a uniform-cluster-frequency diagnostic.
FrequencyReport patch_frequencies(const PointSet& ps, double D, const std::vector<Box>& anchors);

/// JSON export of a patch table (canonical order, hex keys).
std::string patch_table_json(const PatchTable& table);

}  // namespace flc

#endif
