#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "core/rational.hpp"

namespace ddgeom {

struct Point2 {
  Rational x;
  Rational y;

  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point2& o) const { return !(*this == o); }
  bool operator<(const Point2& o) const {
    const int cx = cmp(x, o.x);
    if (cx != 0) return cx < 0;
    return cmp(y, o.y) < 0;
  }
};

struct Point3 {
  Rational x;
  Rational y;
  Rational z;

  const Rational& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  Rational& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
  bool operator!=(const Point3& o) const { return !(*this == o); }
  bool operator<(const Point3& o) const {
    const int cx = cmp(x, o.x);
    if (cx != 0) return cx < 0;
    const int cy = cmp(y, o.y);
    if (cy != 0) return cy < 0;
    return cmp(z, o.z) < 0;
  }
};

using Vec3 = Point3;

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Rational& s, const Vec3& v);
Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
bool is_zero(const Vec3& v);

struct Point2Hash {
  std::uint64_t operator()(const Point2& p) const {
    return hash_combine(hash_rational(p.x), hash_rational(p.y));
  }
};

struct Point3Hash {
  std::uint64_t operator()(const Point3& p) const {
    return hash_combine(hash_combine(hash_rational(p.x), hash_rational(p.y)),
                        hash_rational(p.z));
  }
};

/// Squared Euclidean distance in the plane.
Rational dist_sq(const Point2& a, const Point2& b);

/// A line in R^3 in canonical form: the direction is scaled so its first
/// nonzero coordinate equals 1, and the base point is the unique point of
/// the line whose coordinate at that index is 0. Two Line3 values are equal
/// as sets of points iff they compare equal componentwise.
class Line3 {
 public:
  /// Canonicalizes (base, dir). Throws std::invalid_argument if dir is zero.
  Line3(const Point3& base, const Vec3& dir);

  /// Line through two points. Throws std::invalid_argument if they coincide.
  static Line3 through(const Point3& a, const Point3& b);

  const Point3& base() const { return base_; }
  const Vec3& dir() const { return dir_; }
  /// Index of the first nonzero (= 1) coordinate of the direction.
  int leading_index() const { return lead_; }

  Point3 point_at(const Rational& t) const;
  bool contains(const Point3& p) const;

  /// Pluecker coordinates (d, m) with m = base x dir. They satisfy the
  /// quadratic relation dot(d, m) = 0.
  std::array<Rational, 6> plucker() const;

  bool operator==(const Line3& o) const { return base_ == o.base_ && dir_ == o.dir_; }
  bool operator!=(const Line3& o) const { return !(*this == o); }
  bool operator<(const Line3& o) const {
    if (base_ < o.base_) return true;
    if (o.base_ < base_) return false;
    return dir_ < o.dir_;
  }

 private:
  Point3 base_;
  Vec3 dir_;
  int lead_;
};

struct Line3Hash {
  std::uint64_t operator()(const Line3& l) const {
    return hash_combine(Point3Hash{}(l.base()), Point3Hash{}(l.dir()));
  }
};

enum class PairClass { Equal, Parallel, Intersecting, Skew };

struct PairClassification {
  PairClass kind;
  /// Present iff kind == Intersecting.
  std::optional<Point3> point;
};

/// Exact classification of a pair of lines. Intersecting pairs carry the
/// unique common point.
PairClassification classify_pair(const Line3& a, const Line3& b);

/// Reciprocal Pluecker pairing of two lines; zero iff the lines are
/// coplanar (equal, parallel, or intersecting). Independent of
/// classify_pair, which makes it usable as a cross-check.
Rational plucker_side(const Line3& a, const Line3& b);

const char* pair_class_name(PairClass c);

}  // namespace ddgeom
