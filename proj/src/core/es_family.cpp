#include "core/es_family.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "core/incidence.hpp"

namespace ddgeom {

void validate_config(const PlanarConfig& config) {
  if (config.points.empty())
    throw std::invalid_argument("config must contain at least one point");
  std::set<Point2> seen(config.points.begin(), config.points.end());
  if (seen.size() != config.points.size())
    throw std::invalid_argument("config points must be pairwise distinct");
}

Line3 es_line(const Point2& p1, const Point2& p2) {
  Point3 base{(p1.x + p2.x) / 2, (p1.y + p2.y) / 2, 0};
  Vec3 dir{p1.y - p2.y, p2.x - p1.x, 2};
  return Line3(base, dir);
}

std::vector<ESLine> build_line_family(const PlanarConfig& config) {
  validate_config(config);
  std::vector<ESLine> family;
  family.reserve(config.points.size() * config.points.size());
  std::set<Line3> canonical;
  for (const Point2& p1 : config.points)
    for (const Point2& p2 : config.points) {
      ESLine entry{es_line(p1, p2), p1, p2};
      canonical.insert(entry.line);
      family.push_back(std::move(entry));
    }
  if (canonical.size() != family.size())
    throw std::logic_error("build_line_family: pair -> line map not injective");
  return family;
}

bool is_distance_quadruple(const Point2& p1, const Point2& p2,
                           const Point2& p3, const Point2& p4) {
  const Rational d12 = dist_sq(p1, p2);
  return d12 != 0 && d12 == dist_sq(p3, p4);
}

bool quadinter_check(const Point2& p1, const Point2& p2, const Point2& p3,
                     const Point2& p4) {
  const Rational ax = p1.x + p3.x;
  const Rational ay = p1.y + p3.y;
  const Rational bx = p1.y - p3.y;
  const Rational by = p3.x - p1.x;
  const Rational a2x = p2.x + p4.x;
  const Rational a2y = p2.y + p4.y;
  const Rational b2x = p2.y - p4.y;
  const Rational b2y = p4.x - p2.x;
  return (ax - a2x) * (by - b2y) == (ay - a2y) * (bx - b2x);
}

QuadrupleCensus quadruple_census_bruteforce(const PlanarConfig& config,
                                            long cap) {
  validate_config(config);
  const long n = static_cast<long>(config.points.size());
  if (n > cap)
    throw std::invalid_argument(
        "config too large for the quadruple sweep; use "
        "quadruple_census_via_rich_points");
  std::vector<std::vector<Rational>> dsq(
      static_cast<std::size_t>(n),
      std::vector<Rational>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < dsq.size(); ++i)
    for (std::size_t j = 0; j < dsq.size(); ++j)
      dsq[i][j] = dist_sq(config.points[i], config.points[j]);

  QuadrupleCensus census;
  census.n = n;
  const auto& pts = config.points;
  for (std::size_t i1 = 0; i1 < pts.size(); ++i1)
    for (std::size_t i2 = 0; i2 < pts.size(); ++i2) {
      if (i2 == i1) continue;
      const Rational diff_x = pts[i1].x - pts[i2].x;
      const Rational diff_y = pts[i1].y - pts[i2].y;
      for (std::size_t i3 = 0; i3 < pts.size(); ++i3)
        for (std::size_t i4 = 0; i4 < pts.size(); ++i4) {
          if (i4 == i3) continue;
          if (dsq[i1][i2] != dsq[i3][i4]) continue;
          ++census.total;
          if (diff_x == pts[i3].x - pts[i4].x && diff_y == pts[i3].y - pts[i4].y)
            ++census.parallel;
          else
            ++census.intersecting;
        }
    }
  return census;
}

QuadrupleCensus quadruple_census_via_rich_points(const PlanarConfig& config,
                                                 int workers) {
  validate_config(config);
  const long n = static_cast<long>(config.points.size());

  std::map<Point2, long> diff_count;
  std::map<Rational, long> dist_count;
  for (const Point2& a : config.points)
    for (const Point2& b : config.points) {
      if (a == b) continue;
      ++diff_count[Point2{a.x - b.x, a.y - b.y}];
      ++dist_count[dist_sq(a, b)];
    }

  QuadrupleCensus census;
  census.n = n;
  for (const auto& [diff, count] : diff_count)
    census.parallel += count * count;

  std::vector<Line3> lines;
  lines.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const ESLine& entry : build_line_family(config))
    lines.push_back(entry.line);
  const RichPointMap rich = compute_rich_points(lines, workers);
  for (const auto& [point, mult] : rich.entries)
    census.intersecting += mult * (mult - 1);

  census.total = census.parallel + census.intersecting;
  long total_by_distance = 0;
  for (const auto& [d, count] : dist_count) total_by_distance += count * count;
  if (census.total != total_by_distance)
    throw std::logic_error(
        "census mismatch between the distance-class and line-geometry counts");
  return census;
}

DistinctDistanceReport dd_lower_bound(const PlanarConfig& config, int workers) {
  validate_config(config);
  const long n = static_cast<long>(config.points.size());
  if (n < 3) throw std::invalid_argument("dd_lower_bound: need at least 3 points");

  DistinctDistanceReport report;
  report.census = quadruple_census_via_rich_points(config, workers);

  std::set<Rational> distances;
  for (std::size_t i = 0; i < config.points.size(); ++i)
    for (std::size_t j = i + 1; j < config.points.size(); ++j)
      distances.insert(dist_sq(config.points[i], config.points[j]));
  report.distinct = static_cast<long>(distances.size());

  const Integer ni(n);
  report.bound = Rational(ni * ni * ni * (ni - 2), Integer(report.census.total));
  report.bound.canonicalize();
  if (Rational(report.distinct) < report.bound)
    throw std::logic_error("dd_lower_bound: distinct-distance bound violated");
  return report;
}

namespace {

/// b1 = a1 + x3*a2 and b2 = -x3*a1 + a2 for a1 = 2x1 - p1 - x3*p2,
/// a2 = 2x2 - p2 + p1*x3; (1 + x3^2)^-1 (b1, b2) is the partner point of
/// the anchored line through x.
void partner_numerators(const Point2& p, const Point3& x, Rational& b1,
                        Rational& b2) {
  const Rational a1 = 2 * x.x - p.x - x.z * p.y;
  const Rational a2 = 2 * x.y - p.y + p.x * x.z;
  b1 = a1 + x.z * a2;
  b2 = a2 - x.z * a1;
}

}  // namespace

VectorFieldValue vector_field_Vp(const Point2& p, const Point3& x) {
  Rational b1, b2;
  partner_numerators(p, x, b1, b2);
  const Rational s = x.z * x.z + 1;
  VectorFieldValue v;
  v.v1 = p.y * s - b2;
  v.v2 = b1 - p.x * s;
  v.v3 = 2 * s;
  return v;
}

std::array<TriPoly, 3> vector_field_Vp_polys(const Point2& p) {
  const TriPoly x1 = TriPoly::variable(0);
  const TriPoly x2 = TriPoly::variable(1);
  const TriPoly x3 = TriPoly::variable(2);
  const TriPoly a1 = x1 * Rational(2) - TriPoly::constant(p.x) - x3 * p.y;
  const TriPoly a2 = x2 * Rational(2) - TriPoly::constant(p.y) + x3 * p.x;
  const TriPoly b1 = a1 + x3 * a2;
  const TriPoly b2 = a2 - x3 * a1;
  const TriPoly s = x3 * x3 + TriPoly::constant(1);
  return {s * p.y - b2, b1 - s * p.x, s * Rational(2)};
}

PencilLine line_through_point(const Point2& p, const Point3& x) {
  Rational b1, b2;
  partner_numerators(p, x, b1, b2);
  const Rational s = x.z * x.z + 1;
  const Point2 partner{b1 / s, b2 / s};
  PencilLine result{partner, es_line(p, partner)};
  if (!result.line.contains(x))
    throw std::logic_error("line_through_point: solved line misses the point");
  return result;
}

DirectionalVanishingReport directional_vanishing_check(
    const Point2& p, const TriPoly& q, const std::vector<Line3>& candidates,
    bool test_divisibility) {
  if (q.is_zero())
    throw std::invalid_argument("directional_vanishing_check: zero polynomial");

  const std::array<TriPoly, 3> v = vector_field_Vp_polys(p);
  DirectionalVanishingReport report;
  report.w = v[0] * q.partial(0) + v[1] * q.partial(1) + v[2] * q.partial(2);

  for (const Line3& line : candidates) {
    const PencilLine anchored = line_through_point(p, line.base());
    if (anchored.line != line) continue;
    if (!q.restrict_to_line(line).is_zero()) continue;
    ++report.lines_in_surface;
    if (!report.w.restrict_to_line(line).is_zero()) report.all_vanish = false;
  }
  if (test_divisibility) {
    report.divisibility_tested = true;
    report.divisible = divisible_by(report.w, q);
  }
  return report;
}

}  // namespace ddgeom
