#pragma once

#include <array>
#include <vector>

#include "core/geom.hpp"
#include "core/poly.hpp"

namespace ddgeom {

/// A planar point configuration. Every operation below requires the points
/// to be pairwise distinct.
struct PlanarConfig {
  std::vector<Point2> points;
};

/// Throws std::invalid_argument if the config is empty or repeats a point.
void validate_config(const PlanarConfig& config);

/// One family line together with the ordered point pair that encodes it.
struct ESLine {
  Line3 line;
  Point2 src1;
  Point2 src2;
};

/// The line attached to the ordered pair (p1, p2), cut out by
///   2x = (x1 + x2) + (y1 - y2) z
///   2y = (y1 + y2) + (x2 - x1) z,
/// i.e. base ((x1+x2)/2, (y1+y2)/2, 0) and direction (y1-y2, x2-x1, 2).
/// p1 == p2 gives the vertical line over the point.
Line3 es_line(const Point2& p1, const Point2& p2);

/// All N^2 lines over ordered pairs of config points, diagonal pairs
/// included. The pair -> line map is injective; a duplicate canonical line
/// would be a std::logic_error.
std::vector<ESLine> build_line_family(const PlanarConfig& config);

/// dist_sq(p1,p2) == dist_sq(p3,p4) != 0.
bool is_distance_quadruple(const Point2& p1, const Point2& p2,
                           const Point2& p3, const Point2& p4);

/// Coplanarity of the lines encoded by (p1,p3) and (p2,p4), decided by a
/// 2x2 determinant in the pair coordinates with no line geometry involved:
/// with a = p1 + p3, b = (y1 - y3, x3 - x1) and A, B formed the same way
/// from (p2, p4), tests (a_x - A_x)(b_y - B_y) == (a_y - A_y)(b_x - B_x).
/// True exactly when dist_sq(p1,p2) == dist_sq(p3,p4), zero allowed; the
/// distance-quadruple predicate additionally requires p1 != p2.
bool quadinter_check(const Point2& p1, const Point2& p2, const Point2& p3,
                     const Point2& p4);

/// Ordered quadruples (p1,p2,p3,p4) with |p1-p2| = |p3-p4| != 0, split by
/// whether p1 - p2 == p3 - p4 (the parallel class) or not.
struct QuadrupleCensus {
  long total = 0;
  long parallel = 0;
  long intersecting = 0;
  long n = 0;
};

/// Exact census by enumeration of all N^4 ordered quadruples. Throws
/// std::invalid_argument when N exceeds cap; the rich-point census has no
/// cap and must agree wherever both run.
QuadrupleCensus quadruple_census_bruteforce(const PlanarConfig& config,
                                            long cap = 40);

/// The same census without the N^4 sweep: the parallel count comes from
/// the difference multiset, the intersecting count from the rich points of
/// the line family, and their sum is cross-checked against the
/// distance-class sum of squares.
QuadrupleCensus quadruple_census_via_rich_points(const PlanarConfig& config,
                                                 int workers = 1);

struct DistinctDistanceReport {
  long distinct = 0;
  Rational bound;
  QuadrupleCensus census;
};

/// Distinct squared distances of the config against the lower bound
/// (N^4 - 2N^3) / |Q|. Requires N >= 3, which makes the bound positive;
/// the comparison distinct >= bound is enforced on the way out.
DistinctDistanceReport dd_lower_bound(const PlanarConfig& config,
                                      int workers = 1);

struct VectorFieldValue {
  Rational v1;
  Rational v2;
  Rational v3;
};

/// Tangent field of the family of lines anchored at p, evaluated at x.
/// The value is (1 + x3^2) times the direction of the unique anchored line
/// through x, and it never vanishes: the last component is 2*x3^2 + 2.
VectorFieldValue vector_field_Vp(const Point2& p, const Point3& x);

/// The same field with polynomial components (degrees 2, 2, 2).
std::array<TriPoly, 3> vector_field_Vp_polys(const Point2& p);

struct PencilLine {
  Point2 q;
  Line3 line;
};

/// The unique q whose line with anchor p passes through x, together with
/// that line. Containment of x is re-checked before returning.
PencilLine line_through_point(const Point2& p, const Point3& x);

struct DirectionalVanishingReport {
  TriPoly w;
  long lines_in_surface = 0;
  bool all_vanish = true;
  bool divisibility_tested = false;
  bool divisible = false;
};

/// Forms w = V_p . grad(q), of degree at most deg(q) + 1, and checks that
/// it vanishes identically on every candidate line that is anchored at p
/// and lies in Z(q). q must be nonzero. With test_divisibility set, also
/// records whether q divides w.
DirectionalVanishingReport directional_vanishing_check(
    const Point2& p, const TriPoly& q, const std::vector<Line3>& candidates,
    bool test_divisibility = false);

}  // namespace ddgeom
