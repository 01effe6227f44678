#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "core/surfaces.hpp"

using namespace ddgeom;

namespace {

Point3 pt(long x, long y, long z) {
  return Point3{Rational(x), Rational(y), Rational(z)};
}

Line3 ln(long bx, long by, long bz, long dx, long dy, long dz) {
  return Line3(pt(bx, by, bz), pt(dx, dy, dz));
}

TriPoly x() { return TriPoly::variable(0); }
TriPoly y() { return TriPoly::variable(1); }
TriPoly z() { return TriPoly::variable(2); }

/// The saddle x*y - z.
TriPoly saddle() { return x() * y() - z(); }

/// Lines x = a, z = a*y sweeping out the saddle.
std::vector<Line3> saddle_ruling_a(long count) {
  std::vector<Line3> lines;
  for (long a = 0; a < count; ++a) lines.push_back(ln(a, 0, 0, 0, 1, a));
  return lines;
}

/// The crossed ruling y = b, z = b*x of the same surface.
std::vector<Line3> saddle_ruling_b(long count) {
  std::vector<Line3> lines;
  for (long b = 0; b < count; ++b) lines.push_back(ln(0, b, 0, 1, 0, b));
  return lines;
}

}  // namespace

TEST_CASE("line containment restricts exactly") {
  const TriPoly plane = z();
  CHECK(line_in_zero_set(plane, ln(0, 0, 0, 1, 0, 0)));
  CHECK(line_in_zero_set(plane, ln(3, -2, 0, 1, 5, 0)));
  CHECK_FALSE(line_in_zero_set(plane, ln(0, 0, 0, 0, 0, 1)));
  CHECK_FALSE(line_in_zero_set(plane, ln(0, 0, 1, 1, 0, 0)));
  CHECK(line_in_zero_set(TriPoly::zero(), ln(1, 2, 3, 4, 5, 6)));

  const TriPoly q = saddle();
  for (const Line3& l : saddle_ruling_a(4)) CHECK(line_in_zero_set(q, l));
  for (const Line3& l : saddle_ruling_b(4)) CHECK(line_in_zero_set(q, l));
  CHECK_FALSE(line_in_zero_set(q, ln(0, 0, 1, 1, 0, 0)));
}

TEST_CASE("two skew lines admit no plane") {
  const std::vector<Line3> lines{ln(0, 0, 0, 1, 0, 0), ln(0, 0, 1, 0, 1, 0)};
  CHECK(vanishing_space(lines, 1).empty());
}

TEST_CASE("two crossing lines span one plane") {
  const std::vector<Line3> lines{ln(0, 0, 0, 1, 0, 0), ln(0, 0, 0, 0, 1, 0)};
  const std::vector<TriPoly> space = vanishing_space(lines, 1);
  REQUIRE(space.size() == 1);
  CHECK(space[0].normalized() == z());
}

TEST_CASE("three skew rulings pin down their quadric") {
  const std::vector<TriPoly> space = vanishing_space(saddle_ruling_a(3), 2);
  REQUIRE(space.size() == 1);
  CHECK(space[0].normalized() == saddle());
}

TEST_CASE("vanishing space rejects degree zero") {
  CHECK_THROWS_AS(vanishing_space({ln(0, 0, 0, 1, 0, 0)}, 0),
                  std::invalid_argument);
}

TEST_CASE("planes and full-rank quadrics are certified irreducible") {
  CHECK(classify_surface(z()).status == Irreducibility::VerifiedIrreducible);
  CHECK(classify_surface(x() + y() * 3 + TriPoly::constant(-7)).status ==
        Irreducibility::VerifiedIrreducible);
  CHECK(classify_surface(saddle()).status ==
        Irreducibility::VerifiedIrreducible);
  CHECK(classify_surface(x() * y() + TriPoly::constant(-1)).status ==
        Irreducibility::VerifiedIrreducible);
  CHECK(classify_surface(x() * x() + y() * y() + z() * z() +
                         TriPoly::constant(-1))
            .status == Irreducibility::VerifiedIrreducible);
}

TEST_CASE("rank-one quadrics come back as a squared plane") {
  const TriPoly w = (x() + y()) * (x() + y());
  const SurfaceClass cls = classify_surface(w);
  CHECK(cls.status == Irreducibility::ReducibleWithFactors);
  REQUIRE(cls.factors.size() == 1);
  CHECK(cls.factors[0] == (x() + y()).normalized());
}

TEST_CASE("rank-two quadrics split when the discriminant is square") {
  const SurfaceClass diff = classify_surface(x() * x() - y() * y() * 4);
  CHECK(diff.status == Irreducibility::ReducibleWithFactors);
  REQUIRE(diff.factors.size() == 2);
  CHECK((diff.factors[0] * diff.factors[1]).normalized() ==
        (x() * x() - y() * y() * 4).normalized());

  const SurfaceClass prod = classify_surface(x() * y());
  CHECK(prod.status == Irreducibility::ReducibleWithFactors);
  REQUIRE(prod.factors.size() == 2);
  CHECK((prod.factors[0] * prod.factors[1]).normalized() == x() * y());

  const SurfaceClass shifted = classify_surface((x() + TriPoly::constant(1)) *
                                                (y() + TriPoly::constant(-2)));
  CHECK(shifted.status == Irreducibility::ReducibleWithFactors);
  REQUIRE(shifted.factors.size() == 2);
}

TEST_CASE("rank-two quadrics without a rational split stay unverified") {
  CHECK(classify_surface(x() * x() - y() * y() * 2).status ==
        Irreducibility::Unverified);
  CHECK(classify_surface(x() * x() + y() * y()).status ==
        Irreducibility::Unverified);
}

TEST_CASE("degrees past two are reported unverified") {
  CHECK(classify_surface(x() * x() * x() - y()).status ==
        Irreducibility::Unverified);
  CHECK_THROWS_AS(classify_surface(TriPoly::zero()), std::invalid_argument);
}

TEST_CASE("irreducibility labels are stable") {
  CHECK(irreducibility_name(Irreducibility::VerifiedIrreducible) ==
        doctest::String("verified-irreducible"));
  CHECK(irreducibility_name(Irreducibility::Unverified) ==
        doctest::String("unverified"));
  CHECK(irreducibility_name(Irreducibility::ReducibleWithFactors) ==
        doctest::String("reducible-with-factors"));
}

TEST_CASE("a loaded plane is found among strays") {
  std::vector<Line3> lines;
  for (long k = 0; k < 5; ++k) lines.push_back(ln(0, k, 0, 1, 0, 0));
  for (long k = 0; k < 5; ++k) lines.push_back(ln(k, 0, 0, 0, 1, 0));
  for (const Line3& l : saddle_ruling_a(6)) {
    if (sgn(l.base().x) != 0) lines.push_back(l);
  }
  REQUIRE(lines.size() == 15);

  const auto found = greedy_surface_clusters(lines, 1, 5);
  REQUIRE(found.size() == 1);
  CHECK(found[0].poly.normalized() == z());
  CHECK(found[0].lines_contained ==
        std::vector<long>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(found[0].irreducibility == Irreducibility::VerifiedIrreducible);
}

TEST_CASE("pairwise skew lines yield no surface at degree one") {
  const auto found = greedy_surface_clusters(saddle_ruling_a(5), 1, 2);
  CHECK(found.empty());
}

TEST_CASE("two rulings of a quadric are covered by one surface") {
  std::vector<Line3> lines = saddle_ruling_a(10);
  for (const Line3& l : saddle_ruling_b(10)) lines.push_back(l);

  const auto found = greedy_surface_clusters(lines, 2, 8);
  REQUIRE(found.size() == 1);
  CHECK(found[0].poly.normalized() == saddle());
  CHECK(found[0].lines_contained.size() == 20);
  CHECK(found[0].irreducibility == Irreducibility::VerifiedIrreducible);

  const SurfcountReport rep = verify_surfcount(found, 20, 8, 2);
  CHECK_FALSE(rep.applicable);
  CHECK(rep.candidates == 1);
}

TEST_CASE("greedy search validates its knobs") {
  const std::vector<Line3> lines{ln(0, 0, 0, 1, 0, 0)};
  CHECK_THROWS_AS(greedy_surface_clusters(lines, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(greedy_surface_clusters(lines, 1, 1), std::invalid_argument);
}

TEST_CASE("three packed planes among strays stay under the count bound") {
  std::vector<Line3> lines;
  for (long c = 0; c < 3; ++c) {
    for (long m = 0; m < 6; ++m) {
      for (long b = 0; b < 5; ++b) lines.push_back(ln(0, b, c, 1, m, 0));
    }
  }
  for (long k = 0; k < 10; ++k) {
    lines.push_back(ln(0, 11 + k, 3 + 2 * k, 1, 5 * k + 1, 7));
  }
  REQUIRE(lines.size() == 100);

  const auto found = greedy_surface_clusters(lines, 1, 30);
  REQUIRE(found.size() == 3);
  for (const SurfaceCandidate& c : found) {
    CHECK(c.lines_contained.size() == 30);
    CHECK(c.irreducibility == Irreducibility::VerifiedIrreducible);
  }

  const SurfcountReport rep = verify_surfcount(found, 100, 30, 1);
  CHECK(rep.applicable);
  CHECK(rep.candidates == 3);
  CHECK(rep.count_bound == Rational(20) / Rational(3));
  CHECK(rep.max_shared == 0);
  CHECK(rep.shared_bound == 1);
}

TEST_CASE("two pencils sharing one line keep their overlap at one") {
  std::vector<Line3> lines;
  for (long k = 0; k <= 10; ++k) lines.push_back(ln(0, 0, 0, 1, k, 0));
  for (long k = 1; k <= 10; ++k) lines.push_back(ln(0, 0, 0, 1, 0, k));
  REQUIRE(lines.size() == 21);

  const auto found = greedy_surface_clusters(lines, 1, 10);
  REQUIRE(found.size() == 2);
  CHECK(found[0].lines_contained.size() == 11);
  CHECK(found[1].lines_contained.size() == 11);

  const SurfcountReport rep = verify_surfcount(found, 21, 10, 1);
  CHECK(rep.applicable);
  CHECK(rep.max_shared == 1);
}

TEST_CASE("count and sharing violations are named") {
  const auto plane_at = [](long c) {
    SurfaceCandidate cand;
    cand.poly = TriPoly::variable(2) + TriPoly::constant(-c);
    for (long i = 0; i < 10; ++i) cand.lines_contained.push_back(i);
    return cand;
  };
  std::vector<SurfaceCandidate> many;
  for (long c = 0; c < 5; ++c) many.push_back(plane_at(c));
  CHECK_THROWS_AS(verify_surfcount(many, 20, 10, 1), std::logic_error);

  SurfaceCandidate a = plane_at(0);
  SurfaceCandidate b = plane_at(1);
  b.lines_contained = {0, 1, 10, 11, 12, 13, 14, 15, 16, 17};
  CHECK_THROWS_AS(verify_surfcount({a, b}, 24, 10, 1), std::logic_error);
}

TEST_CASE("surface count verification rejects malformed input") {
  SurfaceCandidate thin;
  thin.poly = TriPoly::variable(2);
  thin.lines_contained = {0};
  CHECK_THROWS_AS(verify_surfcount({thin}, 10, 2, 1), std::invalid_argument);

  SurfaceCandidate a;
  a.poly = TriPoly::variable(2);
  a.lines_contained = {0, 1};
  SurfaceCandidate b = a;
  b.lines_contained = {2, 3};
  CHECK_THROWS_AS(verify_surfcount({a, b}, 1000, 2, 1), std::invalid_argument);

  CHECK_THROWS_AS(verify_surfcount({}, 0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_surfcount({}, 10, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_surfcount({}, 10, 2, 0), std::invalid_argument);
}
