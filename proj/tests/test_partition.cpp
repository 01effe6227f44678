#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "core/generators.hpp"
#include "core/json_io.hpp"
#include "core/partition.hpp"
#include "core/rng.hpp"

using namespace ddgeom;

namespace {

Point3 pt(long x, long y, long z) {
  return Point3{Rational(x), Rational(y), Rational(z)};
}

std::vector<Point3> cube_corners() {
  std::vector<Point3> pts;
  for (long x : {-1, 1})
    for (long y : {-1, 1})
      for (long z : {-1, 1}) pts.push_back(pt(x, y, z));
  return pts;
}

std::vector<Point3> random_points3(long n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    pts.push_back(Point3{rng.uniform_rational(8, 4), rng.uniform_rational(8, 4),
                         rng.uniform_rational(8, 4)});
  }
  return pts;
}

long conserved_total(const PartitionResult& part) {
  long total = static_cast<long>(part.on_boundary.size());
  for (const PartitionCell& cell : part.cells) total += cell.count;
  return total;
}

TriPoly var(int i) { return TriPoly::variable(i); }

}  // namespace

TEST_CASE("cube corners with budget three get the coordinate planes") {
  const std::vector<Point3> pts = cube_corners();
  const PartitionResult part = partition_planes(pts, 3);

  REQUIRE(part.factors.size() == 3);
  CHECK(part.factors[0] == var(0));
  CHECK(part.factors[1] == var(1));
  CHECK(part.factors[2] == var(2));
  CHECK(part.poly == var(0) * var(1) * var(2));
  CHECK(part.backend == "planes");
  CHECK(part.degree_budget == 3);
  CHECK(part.round_degrees == std::vector<int>{1, 1, 1});
  CHECK(part.fallback_rounds == 0);

  REQUIRE(part.cells.size() == 8);
  for (const PartitionCell& cell : part.cells) {
    CHECK(cell.count == 1);
    CHECK(cell.signs.size() == 3);
    for (int s : cell.signs) CHECK(s != 0);
  }
  CHECK(part.on_boundary.empty());
  CHECK(part.assignments.at(pt(1, 1, 1)) ==
        static_cast<long>(part.cells.size()) - 1);
  CHECK(part.assignments.at(pt(-1, -1, -1)) == 0);

  const PolyhamReport report = verify_polyham(part, pts);
  CHECK(report.cells == 8);
  CHECK(report.max_cell == 1);
  CHECK(report.boundary == 0);
  CHECK(report.planes_bound == Rational(16) / 3);
  CHECK(report.cells_over_d3 == Rational(8) / 27);
  CHECK(report.maxcell_ratio == Rational(27) / 8);
}

TEST_CASE("preconditions are enforced") {
  CHECK_THROWS_AS(partition_planes({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(partition_planes({pt(0, 0, 0)}, 0), std::invalid_argument);
  CHECK_THROWS_AS(partition_lifted({pt(0, 0, 0)}, 4), std::invalid_argument);
  CHECK_THROWS_AS(partition_lifted(cube_corners(), 1), std::invalid_argument);
}

TEST_CASE("a single point with budget one lands in a cell or on the cut") {
  const std::vector<Point3> pts = {pt(2, 3, 4)};
  const PartitionResult part = partition_planes(pts, 1);
  REQUIRE(part.factors.size() == 1);
  CHECK(conserved_total(part) == 1);
  const PolyhamReport report = verify_polyham(part, pts);
  CHECK(report.points == 1);
  CHECK(report.cells + report.boundary >= 1);
}

TEST_CASE("planes backend meets its max-cell guarantee on random points") {
  for (const int degree : {4, 10}) {
    const std::vector<Point3> pts = random_points3(100, 321 + degree);
    const PartitionResult part = partition_planes(pts, degree);
    CHECK(conserved_total(part) == 100);
    const PolyhamReport report = verify_polyham(part, pts);
    CHECK(report.max_cell * degree <= 2 * 100);
    CHECK(report.boundary + report.max_cell >= 1);
  }
}

TEST_CASE("planar input cannot be separated by its flat direction alone") {
  std::vector<Point3> pts;
  Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    pts.push_back(
        Point3{rng.uniform_rational(6, 2), rng.uniform_rational(6, 2),
               Rational(0)});
  }
  const PartitionResult part = partition_planes(pts, 6);
  CHECK(conserved_total(part) == 40);
  const PolyhamReport report = verify_polyham(part, pts);
  CHECK(report.max_cell * 6 <= 2 * 40);
}

TEST_CASE("duplicate points are counted per occurrence") {
  std::vector<Point3> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(pt(1, 2, 3));
  for (int i = 0; i < 3; ++i) pts.push_back(pt(-4, 5, -6));
  pts.push_back(pt(7, -8, 9));
  pts.push_back(pt(0, 1, -1));
  const PartitionResult part = partition_planes(pts, 4);
  CHECK(conserved_total(part) == 10);
  const PolyhamReport report = verify_polyham(part, pts);
  CHECK(report.points == 10);
  CHECK(report.max_cell * 4 <= 2 * 10);
}

TEST_CASE("partitions are reproducible for a fixed seed") {
  const std::vector<Point3> pts = random_points3(60, 9);
  const PartitionResult a = partition_planes(pts, 8, 5);
  const PartitionResult b = partition_planes(pts, 8, 5);
  CHECK(partition_report_json(a, verify_polyham(a, pts)) ==
        partition_report_json(b, verify_polyham(b, pts)));

  const PartitionResult c = partition_lifted(pts, 4, 5);
  const PartitionResult d = partition_lifted(pts, 4, 5);
  CHECK(partition_report_json(c, verify_polyham(c, pts)) ==
        partition_report_json(d, verify_polyham(d, pts)));
}

TEST_CASE("verifying against a different point set is rejected") {
  const std::vector<Point3> pts = random_points3(30, 4);
  const PartitionResult part = partition_planes(pts, 5);

  std::vector<Point3> shuffled = pts;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK_NOTHROW(verify_polyham(part, shuffled));

  std::vector<Point3> tampered = pts;
  tampered[0] = pt(999, 999, 999);
  CHECK_THROWS_AS(verify_polyham(part, tampered), std::invalid_argument);
  tampered = pts;
  tampered.pop_back();
  CHECK_THROWS_AS(verify_polyham(part, tampered), std::invalid_argument);
}

TEST_CASE("two separated clusters are bisected twice under budget two") {
  std::vector<Point3> pts;
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    pts.push_back(Point3{rng.uniform_rational(2, 4) + 10,
                         rng.uniform_rational(2, 4),
                         rng.uniform_rational(2, 4)});
  }
  for (int i = 0; i < 50; ++i) {
    pts.push_back(Point3{rng.uniform_rational(2, 4) - 10,
                         rng.uniform_rational(2, 4),
                         rng.uniform_rational(2, 4)});
  }
  const PartitionResult part = partition_lifted(pts, 2, 3);
  CHECK(part.backend == "lifted");
  CHECK(part.round_degrees == std::vector<int>{1, 1});
  CHECK(part.fallback_rounds == 0);
  CHECK(conserved_total(part) == 100);
  const PolyhamReport report = verify_polyham(part, pts);
  CHECK(report.max_cell <= 25);
}

TEST_CASE("lifted rounds on a small grid follow the degree schedule") {
  std::vector<Point3> pts;
  for (long x = 0; x < 4; ++x)
    for (long y = 0; y < 4; ++y)
      for (long z = 0; z < 4; ++z) pts.push_back(pt(x, y, z));
  const PartitionResult part = partition_lifted(pts, 4, 1);
  CHECK(part.round_degrees == std::vector<int>{1, 1, 2});
  CHECK(part.fallback_rounds == 0);
  CHECK(conserved_total(part) == 64);
  const PolyhamReport report = verify_polyham(part, pts);
  // three verified halvings: no part can exceed ceil(64 / 2^3)
  CHECK(report.max_cell <= 8);
  CHECK(part.poly.degree() <= 4);
}

TEST_CASE("collinear points may all land on the cut") {
  std::vector<Point3> pts;
  for (long i = 0; i < 12; ++i) pts.push_back(pt(i, 2 * i, -i));
  const PartitionResult part = partition_lifted(pts, 4, 7);
  CHECK(conserved_total(part) == 12);
  CHECK_NOTHROW(verify_polyham(part, pts));
}

TEST_CASE("a crossing line meets both sides of a single plane cut") {
  const std::vector<Point3> pts = {pt(-1, 0, 0), pt(1, 0, 0)};
  const PartitionResult part = partition_planes(pts, 1);
  REQUIRE(part.factors.size() == 1);
  CHECK(part.factors[0] == var(0));
  REQUIRE(part.cells.size() == 2);

  const std::vector<Line3> lines = {
      Line3(pt(-5, 0, 0), pt(5, 1, 0)),   // crosses x = 0
      Line3(pt(0, 0, 0), pt(0, 1, 0)),    // inside x = 0
      Line3(pt(1, 1, 1), pt(0, 1, 0)),    // stays on the positive side
  };
  const LineCellIncidence inc = line_cell_incidence(lines, part);

  CHECK(inc.in_zero_set == std::vector<char>{0, 1, 0});
  CHECK(inc.cells_met[0] == std::vector<long>{0, 1});
  CHECK(inc.cells_met[1].empty());
  REQUIRE(inc.cells_met[2].size() == 1);
  CHECK(part.cells[static_cast<std::size_t>(inc.cells_met[2][0])].signs ==
        SignVector{1});
  CHECK(inc.total_incidences == 3);
  CHECK(inc.max_cells_met == 2);

  REQUIRE(inc.lines_in_cell.size() == 2);
  CHECK(inc.lines_in_cell[0] == std::vector<long>{0});
  CHECK(inc.lines_in_cell[1] == std::vector<long>{0, 2});
}

TEST_CASE("a generic line meets deg+1 octants of the coordinate cut") {
  const PartitionResult part = partition_planes(cube_corners(), 3);
  const Line3 diag(Point3{Rational(1, 2), Rational(1, 4), Rational(1, 8)},
                   pt(1, 2, 4));
  const LineCellIncidence inc = line_cell_incidence({diag}, part);
  CHECK(inc.in_zero_set[0] == 0);
  CHECK(inc.cells_met[0].size() == 4);
  CHECK(inc.max_cells_met == 4);

  const Line3 axis_diag(pt(0, 0, 0), pt(1, 1, 1));
  const LineCellIncidence inc2 = line_cell_incidence({axis_diag}, part);
  CHECK(inc2.cells_met[0].size() == 2);
}

TEST_CASE("a line through an unrealized sign region meets no cell") {
  const std::vector<Point3> pts = {pt(-1, 2, 0), pt(-2, -2, 0), pt(1, 1, 0)};
  const PartitionResult part = partition_planes(pts, 2);
  REQUIRE(part.factors.size() == 2);
  REQUIRE(part.cells.size() == 3);

  const Line3 lonely(pt(5, -5, 0), pt(0, 0, 1));
  const LineCellIncidence inc = line_cell_incidence({lonely}, part);
  CHECK(inc.in_zero_set[0] == 0);
  CHECK(inc.cells_met[0].empty());
  CHECK(inc.total_incidences == 0);
}

TEST_CASE("a bundle of random lines stays within the incidence budget") {
  const std::vector<Point3> pts = random_points3(80, 13);
  const PartitionResult part = partition_planes(pts, 5);
  const int degree = part.poly.degree();

  const std::vector<Line3> lines = gen_random_lines3d(50, 99);
  const LineCellIncidence inc = line_cell_incidence(lines, part);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    CHECK(static_cast<int>(inc.cells_met[li].size()) <= degree + 1);
  }
  CHECK(inc.total_incidences <= (degree + 1) * 50);

  long refit = 0;
  for (const auto& cell_lines : inc.lines_in_cell) {
    refit += static_cast<long>(cell_lines.size());
  }
  CHECK(refit == inc.total_incidences);
}

TEST_CASE("partition reports are well formed JSON") {
  const std::vector<Point3> pts = cube_corners();
  const PartitionResult part = partition_planes(pts, 3);
  const std::string report =
      partition_report_json(part, verify_polyham(part, pts));
  CHECK(report.find("\"backend\":\"planes\"") != std::string::npos);
  CHECK(report.find("\"max_cell\":1") != std::string::npos);
  CHECK(report.find("\"cells_over_d3\":\"8/27\"") != std::string::npos);
  CHECK(report.find("\"maxcell_ratio\":\"27/8\"") != std::string::npos);

  const LineCellIncidence inc =
      line_cell_incidence({Line3(pt(0, 0, 0), pt(1, 1, 1))}, part);
  const std::string inc_report = line_incidence_report_json(inc, part);
  CHECK(inc_report.find("\"incidence_budget\":4") != std::string::npos);
  CHECK(inc_report.find("\"total_incidences\":2") != std::string::npos);
}
