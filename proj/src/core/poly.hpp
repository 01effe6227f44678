#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/geom.hpp"
#include "core/rational.hpp"

namespace ddgeom {

using Monomial = std::array<int, 3>;

/// Graded lexicographic order: total degree first, then exponents.
struct MonomialCmp {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a[0] + a[1] + a[2];
    const int db = b[0] + b[1] + b[2];
    if (da != db) return da < db;
    return a < b;
  }
};

/// All monomials of total degree <= d, ascending in graded lex order.
std::vector<Monomial> monomials_up_to(int d);

/// C(d+3, 3), the number of trivariate monomials of degree <= d.
long monomial_count(int d);

class UniPoly;

/// Sparse trivariate polynomial over Q. Immutable value type; the term map
/// holds only nonzero coefficients. A poly built as a product keeps its
/// factor list alongside the expanded terms.
class TriPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialCmp>;

  TriPoly() = default;
  explicit TriPoly(TermMap terms);

  static TriPoly zero() { return TriPoly(); }
  static TriPoly constant(const Rational& c);
  static TriPoly variable(int i);
  /// c * x^e0 y^e1 z^e2
  static TriPoly term(const Rational& c, const Monomial& e);
  /// Product that records the given polys as the factor list.
  static TriPoly product_of(const std::vector<TriPoly>& factors);

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  const TermMap& terms() const { return terms_; }
  const std::vector<TriPoly>& factors() const { return factors_; }
  bool has_factors() const { return !factors_.empty(); }

  Rational eval(const Point3& p) const;
  TriPoly partial(int var) const;

  /// Substitute the line's parametrization x = base + t*dir; the result is
  /// a polynomial in t of degree <= degree().
  UniPoly restrict_to_line(const Line3& line) const;

  /// Same polynomial scaled to integer coefficients with content 1 and a
  /// positive leading (graded lex) coefficient. Canonical up to positive
  /// scaling, so usable as a dedup key. Factor list is dropped.
  TriPoly normalized() const;

  TriPoly operator+(const TriPoly& o) const;
  TriPoly operator-(const TriPoly& o) const;
  TriPoly operator*(const TriPoly& o) const;
  TriPoly operator-() const;
  TriPoly operator*(const Rational& s) const;
  bool operator==(const TriPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const TriPoly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  TermMap terms_;
  std::vector<TriPoly> factors_;
};

/// Remainder-is-zero test for multivariate division of w by a single
/// nonzero divisor q. A single polynomial generates its ideal with itself
/// as a Groebner basis, so the test is exact.
bool divisible_by(const TriPoly& w, const TriPoly& q);

/// Dense univariate polynomial over Q, coefficients low-degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  /// c * t^k
  static UniPoly term(const Rational& c, int k);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const;

  Rational eval(const Rational& t) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const Rational& s) const;
  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  /// Quotient and remainder with deg(rem) < deg(div). Divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& div) const;

  /// Integer-primitive scaling with the sign kept (positive scalar only).
  UniPoly primitive() const;

  std::string to_string() const;

 private:
  void strip();
  std::vector<Rational> coeffs_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// p / gcd(p, p'); same distinct real roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// B with every real root of p in (-B, B). p must be nonzero.
Rational cauchy_root_bound(const UniPoly& p);

/// Sturm chain of p (which should be square-free for root counting).
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Number of distinct real roots of the square-free poly in the open
/// interval (a, b), evaluated through the chain's sign variations.
/// Endpoints must not be roots.
long count_roots_between(const std::vector<UniPoly>& chain, const Rational& a,
                         const Rational& b);

struct RootInterval {
  Rational lo;
  Rational hi;  // lo == hi means an exact rational root
};

/// Isolating intervals for the distinct real roots of p (any multiplicity),
/// sorted ascending. Each closed interval contains exactly one distinct
/// root; non-degenerate intervals have non-root endpoints; intervals are
/// pairwise disjoint except that two non-degenerate neighbors may share a
/// (non-root) endpoint.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p);

/// Rationals interleaving the root intervals: one strictly below every
/// root, one strictly between consecutive roots, one strictly above every
/// root; none of them a root. For a root-free polynomial, the single
/// sample 0 is returned.
std::vector<Rational> interleaving_samples(const std::vector<RootInterval>& roots);

}  // namespace ddgeom
