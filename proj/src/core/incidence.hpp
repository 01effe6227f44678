#pragma once

#include <map>
#include <vector>

#include "core/geom.hpp"
#include "core/rational.hpp"

namespace ddgeom {

/// Exact incidence structure of a line family: every point lying on at
/// least two of the lines, with the number of lines through it.
struct RichPointMap {
  std::map<Point3, long> entries;
  long total_lines = 0;
  /// Unordered line pairs classified Intersecting. Always equals the sum
  /// over entries of mult*(mult-1)/2; both sides are computed and compared.
  long intersecting_pairs = 0;
};

/// All-pairs exact classification with grouping on the exact intersection
/// point. Lines must be pairwise distinct (std::invalid_argument
/// otherwise). workers > 1 splits the pair loop across threads; the result
/// does not depend on the worker count.
RichPointMap compute_rich_points(const std::vector<Line3>& lines,
                                 int workers = 1);

/// Multiplicity histogram: r -> number of points on exactly r lines.
std::map<long, long> multiplicity_histogram(const RichPointMap& map);

/// Points on at least r lines, ascending. Requires r >= 2.
std::vector<Point3> p_r(const RichPointMap& map, long r);

/// |p_r(map, r)| without materializing the set. Requires r >= 2.
long p_r_count(const RichPointMap& map, long r);

struct BigRReport {
  long rich_count = 0;
  Rational bound;
  Rational margin;
};

/// Checks the count of r-rich points against 2L/r, valid whenever
/// r > 2*sqrt(L); that hypothesis is required exactly (r^2 > 4L) and a
/// violation is a std::invalid_argument.
BigRReport verify_bigr(const RichPointMap& map, long r);

struct SzReport {
  /// max over r in [2, L] of |P_r| / (L^2 r^-3 + L r^-1)
  Rational max_ratio;
  long argmax_r = 2;
};

/// Measures the best constant in |P_r| <= C (L^2 r^-3 + L r^-1) over the
/// whole r range. A measurement, not a pass/fail check.
SzReport verify_szemeredi_trotter(const RichPointMap& map);

}  // namespace ddgeom
