#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/geom.hpp"
#include "core/poly.hpp"
#include "core/rational.hpp"

namespace ddgeom {

/// One sign per partition factor, each entry -1, 0 or +1.
using SignVector = std::vector<int>;

/// A cell is a realizable all-nonzero sign vector together with the number
/// of partitioned points it holds. Cells are disjoint by construction.
struct PartitionCell {
  SignVector signs;
  long count = 0;
};

struct PartitionResult {
  /// Product of the factors below; degree <= degree_budget.
  TriPoly poly;
  std::vector<TriPoly> factors;
  /// Sorted by sign vector; counts cover exactly the off-Z points.
  std::vector<PartitionCell> cells;
  /// Points with some zero sign, i.e. points on Z(poly), one entry per
  /// input occurrence.
  std::vector<Point3> on_boundary;
  /// Point value -> index into cells, or -1 for boundary points.
  std::map<Point3, long> assignments;
  std::string backend;
  int degree_budget = 0;
  /// Degree consumed by each round (lifted backend; planes rounds are 1).
  std::vector<int> round_degrees;
  /// Rounds where the bisection search gave up and a median-plane cut was
  /// used instead (lifted backend only).
  long fallback_rounds = 0;
};

/// Product of at most `degree` affine planes, chosen greedily: each round
/// bisects the currently heaviest cell through a coordinate median in a
/// rotating direction. Guarantees max cell count <= 2|S|/degree.
/// points nonempty, degree >= 1.
PartitionResult partition_planes(const std::vector<Point3>& points, int degree,
                                 std::uint64_t seed = 1);

/// Iterative simultaneous bisection: round t lifts the points through the
/// degree-d_t monomial map (least d_t with half again as many monomials as
/// active parts) and searches for one polynomial of that degree
/// whose open sides each hold at most half of every part, by coordinate
/// descent over exact sign-flip sweeps. Rounds continue while the degree
/// budget lasts; a failed search falls back to a median-plane cut and is
/// recorded. Per-cell quality is measured, not guaranteed.
/// |points| >= 2, degree >= 2.
PartitionResult partition_lifted(const std::vector<Point3>& points, int degree,
                                 std::uint64_t seed = 1);

struct LineCellIncidence {
  /// Per input line, ascending indices of the cells it meets.
  std::vector<std::vector<long>> cells_met;
  /// Per input line, whether it lies inside Z(poly).
  std::vector<char> in_zero_set;
  /// Per cell, ascending indices of the lines meeting it.
  std::vector<std::vector<long>> lines_in_cell;
  /// Sum over off-Z lines of the number of cells met.
  long total_incidences = 0;
  long max_cells_met = 0;
};

/// Restricts each factor to each line, isolates the real roots of the
/// product and evaluates exact sign vectors at rational samples between
/// consecutive roots. Lines inside Z(poly) are flagged and meet no cell.
/// Enforces that an off-Z line meets at most deg(poly)+1 cells and that
/// total incidences stay within (deg(poly)+1) * #lines.
LineCellIncidence line_cell_incidence(const std::vector<Line3>& lines,
                                      const PartitionResult& part);

struct PolyhamReport {
  std::string backend;
  long points = 0;
  long cells = 0;
  long max_cell = 0;
  long boundary = 0;
  /// #cells / budget^3
  Rational cells_over_d3;
  /// max_cell * budget^3 / |S|
  Rational maxcell_ratio;
  /// 2|S|/budget; binding for the planes backend only.
  Rational planes_bound;
};

/// Recomputes every sign from scratch, checks the partition against the
/// point set it claims to partition (std::invalid_argument on mismatch),
/// asserts conservation and the planes-backend guarantees, and reports the
/// measured cell-count and max-cell ratios.
PolyhamReport verify_polyham(const PartitionResult& part,
                             const std::vector<Point3>& points);

}  // namespace ddgeom
