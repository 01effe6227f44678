#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/es_family.hpp"
#include "core/geom.hpp"

namespace ddgeom {

/// Deterministic instance builders: the same parameters and seed always
/// produce the same instance, element order included.

/// rows x cols integer grid {0..cols-1} x {0..rows-1}.
PlanarConfig gen_grid2d(long rows, long cols);

/// n distinct random points with coordinates k/den, |k| <= range*den.
PlanarConfig gen_random2d(long n, std::uint64_t seed, long range = 8,
                          long den = 64);

/// n points 0, step, 2*step, ... on one line. step must be nonzero.
PlanarConfig gen_collinear2d(long n, const Point2& step = Point2{1, 0});

/// n distinct random lines, bases and directions drawn as with gen_random2d.
std::vector<Line3> gen_random_lines3d(long n, std::uint64_t seed,
                                      long range = 8, long den = 64);

/// n distinct random lines inside the plane z = 0.
std::vector<Line3> gen_coplanar_lines(long n, std::uint64_t seed,
                                      long range = 8, long den = 64);

/// n concurrent lines through the origin with directions (1, k, k^2),
/// k = 0..n-1; any plane through the origin holds at most two of them.
std::vector<Line3> gen_pencil(long n);

/// n lines from each ruling of the surface x*y - z = 0 at integer
/// parameters 0..n-1: {x = a, z = a*y} and {y = b, z = b*x}. 2n lines;
/// cross-ruling pairs intersect, same-ruling pairs are skew.
std::vector<Line3> gen_regulus_rulings(long n);

/// Parameter record for the JSON-facing dispatcher.
struct InstanceSpec {
  std::string kind;
  long n = 0;
  long rows = 0;
  long cols = 0;
  std::uint64_t seed = 1;
  long range = 8;
  long den = 64;
  Point2 step{1, 0};
  std::optional<PlanarConfig> base_config;  // for kind "es-from-config"
};

struct GeneratedInstance {
  std::optional<PlanarConfig> config;
  std::optional<std::vector<Line3>> lines;
};

/// Dispatch on spec.kind: grid2d, random2d, collinear2d produce a config;
/// es-from-config, random-lines3d, coplanar-lines, pencil, regulus-rulings
/// produce lines. Unknown kinds and bad parameters are
/// std::invalid_argument.
GeneratedInstance generate(const InstanceSpec& spec);

InstanceSpec instance_spec_from_json(const std::string& text);

}  // namespace ddgeom
