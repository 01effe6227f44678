#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "core/es_family.hpp"
#include "core/generators.hpp"
#include "core/incidence.hpp"

using namespace ddgeom;

namespace {

Point3 pt(long x, long y, long z) {
  return Point3{Rational(x), Rational(y), Rational(z)};
}

std::vector<Line3> axes() {
  return {Line3(pt(0, 0, 0), pt(1, 0, 0)), Line3(pt(0, 0, 0), pt(0, 1, 0)),
          Line3(pt(0, 0, 0), pt(0, 0, 1))};
}

}  // namespace

TEST_CASE("three concurrent axes give one triple point") {
  const RichPointMap map = compute_rich_points(axes());
  CHECK(map.total_lines == 3);
  CHECK(map.intersecting_pairs == 3);
  REQUIRE(map.entries.size() == 1);
  CHECK(map.entries.begin()->first == pt(0, 0, 0));
  CHECK(map.entries.begin()->second == 3);

  CHECK(p_r_count(map, 2) == 1);
  CHECK(p_r_count(map, 3) == 1);
  CHECK(p_r_count(map, 4) == 0);
  CHECK(p_r(map, 2) == std::vector<Point3>{pt(0, 0, 0)});
  CHECK_THROWS_AS(p_r(map, 1), std::invalid_argument);
  CHECK_THROWS_AS(p_r_count(map, 0), std::invalid_argument);
}

TEST_CASE("a grid of lines gives simple crossings") {
  std::vector<Line3> lines;
  for (long y = 0; y <= 1; ++y)
    lines.push_back(Line3(pt(0, y, 0), pt(1, 0, 0)));
  for (long x = 0; x <= 1; ++x)
    lines.push_back(Line3(pt(x, 0, 0), pt(0, 1, 0)));
  const RichPointMap map = compute_rich_points(lines);
  CHECK(map.entries.size() == 4);
  CHECK(map.intersecting_pairs == 4);
  const auto hist = multiplicity_histogram(map);
  REQUIRE(hist.size() == 1);
  CHECK(hist.at(2) == 4);
}

TEST_CASE("duplicate lines are rejected") {
  std::vector<Line3> lines = axes();
  lines.push_back(Line3(pt(5, 0, 0), pt(-3, 0, 0)));
  CHECK_THROWS_AS(compute_rich_points(lines), std::invalid_argument);
}

TEST_CASE("worker count does not change the result") {
  const auto lines = gen_random_lines3d(40, 2024, 3, 8);
  const RichPointMap one = compute_rich_points(lines, 1);
  const RichPointMap four = compute_rich_points(lines, 4);
  const RichPointMap many = compute_rich_points(lines, 64);
  CHECK(one.entries == four.entries);
  CHECK(one.entries == many.entries);
  CHECK(one.intersecting_pairs == four.intersecting_pairs);
  CHECK(one.intersecting_pairs == many.intersecting_pairs);
}

TEST_CASE("pair count matches a direct double loop") {
  const auto lines = gen_random_lines3d(30, 5151, 2, 4);
  const RichPointMap map = compute_rich_points(lines);
  long direct = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (classify_pair(lines[i], lines[j]).kind == PairClass::Intersecting)
        ++direct;
  CHECK(map.intersecting_pairs == direct);

  long from_mults = 0;
  for (const auto& [point, mult] : map.entries)
    from_mults += mult * (mult - 1) / 2;
  CHECK(from_mults == direct);
}

TEST_CASE("p_r_count is non-increasing in r") {
  const auto lines = gen_random_lines3d(25, 808, 2, 4);
  const RichPointMap map = compute_rich_points(lines);
  long prev = p_r_count(map, 2);
  for (long r = 3; r <= 6; ++r) {
    const long cur = p_r_count(map, r);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("rich points of the unit-square family count 30 crossing pairs") {
  std::vector<Line3> lines;
  for (const auto& e : build_line_family(PlanarConfig{
           {Point2{Rational(0), Rational(0)}, Point2{Rational(1), Rational(0)},
            Point2{Rational(0), Rational(1)},
            Point2{Rational(1), Rational(1)}}}))
    lines.push_back(e.line);
  const RichPointMap map = compute_rich_points(lines);
  CHECK(map.total_lines == 16);
  CHECK(map.intersecting_pairs == 30);
  long weighted = 0;
  for (const auto& [point, mult] : map.entries)
    weighted += mult * (mult - 1);
  CHECK(weighted == 60);
}

TEST_CASE("pencil and regulus fixtures") {
  const RichPointMap pencil = compute_rich_points(gen_pencil(9));
  REQUIRE(pencil.entries.size() == 1);
  CHECK(pencil.entries.begin()->second == 9);
  CHECK(pencil.intersecting_pairs == 36);

  const RichPointMap reg = compute_rich_points(gen_regulus_rulings(4));
  CHECK(reg.total_lines == 8);
  CHECK(reg.entries.size() == 16);
  CHECK(reg.intersecting_pairs == 16);
  const auto hist = multiplicity_histogram(reg);
  REQUIRE(hist.size() == 1);
  CHECK(hist.at(2) == 16);
}

TEST_CASE("verify_bigr accepts only r beyond twice the root of L") {
  const RichPointMap pencil = compute_rich_points(gen_pencil(9));
  const BigRReport report = verify_bigr(pencil, 7);
  CHECK(report.rich_count == 1);
  CHECK(report.bound == Rational(18, 7));
  CHECK(report.margin == Rational(11, 7));

  CHECK_THROWS_AS(verify_bigr(pencil, 6), std::invalid_argument);
  CHECK_THROWS_AS(verify_bigr(pencil, 2), std::invalid_argument);
  CHECK_THROWS_AS(verify_bigr(pencil, 1), std::invalid_argument);

  const BigRReport nine = verify_bigr(pencil, 9);
  CHECK(nine.rich_count == 1);
  CHECK(nine.bound == Rational(2));
  CHECK(nine.margin == Rational(1));
}

TEST_CASE("verify_szemeredi_trotter measures the pencil exactly") {
  const RichPointMap pencil = compute_rich_points(gen_pencil(9));
  const SzReport report = verify_szemeredi_trotter(pencil);
  // One point on all 9 lines: the ratio r^3 / (81 + 9 r^2) grows with r,
  // peaking at r = 9 with 729 / (81 + 729).
  CHECK(report.max_ratio == Rational(9, 10));
  CHECK(report.argmax_r == 9);

  std::vector<Line3> parallel;
  for (long y = 0; y < 5; ++y)
    parallel.push_back(Line3(pt(0, y, 0), pt(1, 0, 0)));
  const SzReport flat = verify_szemeredi_trotter(compute_rich_points(parallel));
  CHECK(flat.max_ratio == Rational(0));
}
