#ifndef FLC_IO_HPP
#define FLC_IO_HPP

#include <string>

#include "flc/point_set.hpp"

namespace flc {

/// Point-set text format.
///
/// Header lines:
///   # dim=<d>
///   # r=<r>
///   # R=<R>
///   # window=<a1>,<b1>[;<a2>,<b2>]
///   # basis=<b11>,<b12>,..[;<b21>,..]     (optional; dim x rank, row per axis)
///   # colors=<name1>,<name2>,..           (optional alphabet)
///   # delone=<0|1>                        (optional)
///   # provenance=<text>                   (optional)
/// then one row per point: coordinates, optional weight as a single
/// "re,im" token, optional color label, optional integer module coordinates.
/// Whitespace separated, UTF-8, '.' decimal separator.
std::string write_pointset_string(const PointSet& ps);
PointSet read_pointset_string(const std::string& text);

void write_pointset(const PointSet& ps, const std::string& path);
PointSet read_pointset(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Shortest decimal digits that round-trip a double exactly.
std::string format_double(double x);

}  // namespace flc

#endif
