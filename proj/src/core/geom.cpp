#include "core/geom.hpp"

#include <stdexcept>

namespace ddgeom {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(const Rational& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

bool is_zero(const Vec3& v) { return sgn(v.x) == 0 && sgn(v.y) == 0 && sgn(v.z) == 0; }

Rational dist_sq(const Point2& a, const Point2& b) {
  const Rational dx = a.x - b.x;
  const Rational dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Line3::Line3(const Point3& base, const Vec3& dir) {
  if (is_zero(dir)) throw std::invalid_argument("line with zero direction");
  int k = 0;
  while (sgn(dir[k]) == 0) ++k;
  lead_ = k;
  const Rational inv = 1 / dir[k];
  dir_ = inv * dir;
  base_ = base - base[k] * dir_;
}

Line3 Line3::through(const Point3& a, const Point3& b) {
  if (a == b) throw std::invalid_argument("line through two identical points");
  return Line3(a, b - a);
}

Point3 Line3::point_at(const Rational& t) const { return base_ + t * dir_; }

bool Line3::contains(const Point3& p) const { return is_zero(cross(p - base_, dir_)); }

std::array<Rational, 6> Line3::plucker() const {
  const Vec3 m = cross(base_, dir_);
  return {dir_.x, dir_.y, dir_.z, m.x, m.y, m.z};
}

PairClassification classify_pair(const Line3& a, const Line3& b) {
  if (a == b) return {PairClass::Equal, std::nullopt};
  // Canonical directions are proportional only if identical.
  if (a.dir() == b.dir()) return {PairClass::Parallel, std::nullopt};
  const Vec3 c = cross(a.dir(), b.dir());
  int k = 0;
  while (sgn(c[k]) == 0) ++k;
  const int i = (k + 1) % 3;
  const int j = (k + 2) % 3;
  // Solve t*dir_a - s*dir_b = delta on rows i, j; row k decides skewness.
  const Vec3 delta = b.base() - a.base();
  const Rational det = a.dir()[j] * b.dir()[i] - a.dir()[i] * b.dir()[j];
  const Rational t = (delta[j] * b.dir()[i] - delta[i] * b.dir()[j]) / det;
  const Rational s = (a.dir()[i] * delta[j] - a.dir()[j] * delta[i]) / det;
  if (t * a.dir()[k] - s * b.dir()[k] != delta[k]) return {PairClass::Skew, std::nullopt};
  return {PairClass::Intersecting, a.point_at(t)};
}

Rational plucker_side(const Line3& a, const Line3& b) {
  const auto pa = a.plucker();
  const auto pb = b.plucker();
  return pa[0] * pb[3] + pa[1] * pb[4] + pa[2] * pb[5] + pa[3] * pb[0] + pa[4] * pb[1] +
         pa[5] * pb[2];
}

const char* pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::Equal: return "equal";
    case PairClass::Parallel: return "parallel";
    case PairClass::Intersecting: return "intersecting";
    case PairClass::Skew: return "skew";
  }
  return "unknown";
}

}  // namespace ddgeom
