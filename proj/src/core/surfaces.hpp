#pragma once

#include <cstdint>
#include <vector>

#include "core/geom.hpp"
#include "core/poly.hpp"
#include "core/rational.hpp"

namespace ddgeom {

/// How much is known about a candidate surface polynomial splitting.
/// Degree 1 is always irreducible and degree 2 is settled exactly through
/// the inertia of the homogenized quadratic form; higher degrees stay
/// Unverified unless an explicit factorization is in hand.
enum class Irreducibility { VerifiedIrreducible, Unverified, ReducibleWithFactors };

const char* irreducibility_name(Irreducibility s);

/// A surface carrying many lines of a family.
struct SurfaceCandidate {
  /// Nonzero, degree bounded by the search degree.
  TriPoly poly;
  /// Ascending indices into the family of every line inside Z(poly).
  std::vector<long> lines_contained;
  Irreducibility irreducibility = Irreducibility::Unverified;
  /// Rational factors when the classification produced any (square-free).
  std::vector<TriPoly> factors;
};

/// Exact containment: the restriction of the polynomial to the line is the
/// zero univariate polynomial. True for the zero polynomial.
bool line_in_zero_set(const TriPoly& poly, const Line3& line);

/// Basis of {Q : deg Q <= degree, Q vanishes on every listed line}, as the
/// exact nullspace of the vanishing conditions at degree+1 distinct
/// rational points per line. Empty when only the zero polynomial
/// qualifies. degree >= 1.
std::vector<TriPoly> vanishing_space(const std::vector<Line3>& lines,
                                     int degree);

struct SurfaceClass {
  Irreducibility status = Irreducibility::Unverified;
  std::vector<TriPoly> factors;
};

/// Exact classification for degree <= 2 (inertia of the homogenized form,
/// then a rational split when the rank allows one); degree >= 3 is
/// reported Unverified. The polynomial must be nonzero.
SurfaceClass classify_surface(const TriPoly& poly);

/// Greedy cover of the family by surfaces of degree <= `degree` holding at
/// least `threshold` lines each. Candidates are seeded from coplanar pairs
/// and, for degree >= 2, from random pairs, triples and quadruples under a
/// fixed budget, each seed contributing its vanishing-space basis; the
/// candidate containing the most still-uncovered lines is accepted, its
/// lines are removed, and the search repeats. Accepted candidates record
/// their containment within the full family. Exhaustive for degree 1, a
/// reported heuristic beyond that. threshold >= 2, degree >= 1.
std::vector<SurfaceCandidate> greedy_surface_clusters(
    const std::vector<Line3>& lines, int degree, long threshold,
    std::uint64_t seed = 1);

struct SurfcountReport {
  /// threshold > 2 * degree * sqrt(line_count), checked exactly.
  bool applicable = false;
  long candidates = 0;
  /// 2 * line_count / threshold.
  Rational count_bound;
  /// Most lines shared by any two candidates.
  long max_shared = 0;
  /// degree^2.
  long shared_bound = 0;
};

/// For candidates holding >= threshold lines each out of line_count total:
/// when the threshold clears 2*degree*sqrt(line_count), asserts that there
/// are at most 2*line_count/threshold candidates and that two candidates
/// share at most degree^2 lines (std::logic_error naming the violated
/// inequality). Below the gate the report is inapplicable and nothing is
/// asserted. Candidates must be pairwise distinct with >= threshold lines.
SurfcountReport verify_surfcount(
    const std::vector<SurfaceCandidate>& candidates, long line_count,
    long threshold, int degree);

}  // namespace ddgeom
