#include "core/generators.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "core/json_io.hpp"
#include "core/rng.hpp"

namespace ddgeom {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

PlanarConfig gen_grid2d(long rows, long cols) {
  require(rows >= 1 && cols >= 1, "grid2d: rows and cols must be positive");
  PlanarConfig config;
  config.points.reserve(static_cast<std::size_t>(rows * cols));
  for (long y = 0; y < rows; ++y)
    for (long x = 0; x < cols; ++x)
      config.points.push_back(Point2{Rational(x), Rational(y)});
  return config;
}

PlanarConfig gen_random2d(long n, std::uint64_t seed, long range, long den) {
  require(n >= 1, "random2d: n must be positive");
  require(range >= 1 && den >= 1, "random2d: bad coordinate range");
  const Integer side = 2 * Integer(range) * Integer(den) + 1;
  require(Integer(n) <= side * side, "random2d: n exceeds the coordinate lattice");
  Rng rng(seed);
  PlanarConfig config;
  std::set<Point2> seen;
  while (static_cast<long>(config.points.size()) < n) {
    Point2 p{rng.uniform_rational(range, den), rng.uniform_rational(range, den)};
    if (seen.insert(p).second) config.points.push_back(p);
  }
  return config;
}

PlanarConfig gen_collinear2d(long n, const Point2& step) {
  require(n >= 1, "collinear2d: n must be positive");
  require(step.x != 0 || step.y != 0, "collinear2d: zero step");
  PlanarConfig config;
  for (long i = 0; i < n; ++i)
    config.points.push_back(Point2{Rational(i) * step.x, Rational(i) * step.y});
  return config;
}

std::vector<Line3> gen_random_lines3d(long n, std::uint64_t seed, long range,
                                      long den) {
  require(n >= 1, "random-lines3d: n must be positive");
  require(range >= 1 && den >= 1, "random-lines3d: bad coordinate range");
  Rng rng(seed);
  std::vector<Line3> lines;
  std::set<Line3> seen;
  while (static_cast<long>(lines.size()) < n) {
    Point3 base{rng.uniform_rational(range, den), rng.uniform_rational(range, den),
                rng.uniform_rational(range, den)};
    Vec3 dir{rng.uniform_rational(range, den), rng.uniform_rational(range, den),
             rng.uniform_rational(range, den)};
    if (is_zero(dir)) continue;
    Line3 line(base, dir);
    if (seen.insert(line).second) lines.push_back(line);
  }
  return lines;
}

std::vector<Line3> gen_coplanar_lines(long n, std::uint64_t seed, long range,
                                      long den) {
  require(n >= 1, "coplanar-lines: n must be positive");
  require(range >= 1 && den >= 1, "coplanar-lines: bad coordinate range");
  Rng rng(seed);
  std::vector<Line3> lines;
  std::set<Line3> seen;
  while (static_cast<long>(lines.size()) < n) {
    Point3 base{rng.uniform_rational(range, den), rng.uniform_rational(range, den),
                0};
    Vec3 dir{rng.uniform_rational(range, den), rng.uniform_rational(range, den), 0};
    if (is_zero(dir)) continue;
    Line3 line(base, dir);
    if (seen.insert(line).second) lines.push_back(line);
  }
  return lines;
}

std::vector<Line3> gen_pencil(long n) {
  require(n >= 1, "pencil: n must be positive");
  std::vector<Line3> lines;
  lines.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k)
    lines.emplace_back(Point3{0, 0, 0}, Vec3{1, Rational(k), Rational(k) * k});
  return lines;
}

std::vector<Line3> gen_regulus_rulings(long n) {
  require(n >= 1, "regulus-rulings: n must be positive");
  std::vector<Line3> lines;
  lines.reserve(static_cast<std::size_t>(2 * n));
  for (long a = 0; a < n; ++a)
    lines.emplace_back(Point3{Rational(a), 0, 0}, Vec3{0, 1, Rational(a)});
  for (long b = 0; b < n; ++b)
    lines.emplace_back(Point3{0, Rational(b), 0}, Vec3{1, 0, Rational(b)});
  return lines;
}

GeneratedInstance generate(const InstanceSpec& spec) {
  GeneratedInstance out;
  if (spec.kind == "grid2d") {
    out.config = gen_grid2d(spec.rows > 0 ? spec.rows : spec.n,
                            spec.cols > 0 ? spec.cols : spec.n);
  } else if (spec.kind == "random2d") {
    out.config = gen_random2d(spec.n, spec.seed, spec.range, spec.den);
  } else if (spec.kind == "collinear2d") {
    out.config = gen_collinear2d(spec.n, spec.step);
  } else if (spec.kind == "es-from-config") {
    require(spec.base_config.has_value(), "es-from-config: missing config");
    std::vector<Line3> lines;
    for (const ESLine& entry : build_line_family(*spec.base_config))
      lines.push_back(entry.line);
    out.lines = std::move(lines);
  } else if (spec.kind == "random-lines3d") {
    out.lines = gen_random_lines3d(spec.n, spec.seed, spec.range, spec.den);
  } else if (spec.kind == "coplanar-lines") {
    out.lines = gen_coplanar_lines(spec.n, spec.seed, spec.range, spec.den);
  } else if (spec.kind == "pencil") {
    out.lines = gen_pencil(spec.n);
  } else if (spec.kind == "regulus-rulings") {
    out.lines = gen_regulus_rulings(spec.n);
  } else {
    throw std::invalid_argument("unknown instance kind: " + spec.kind);
  }
  return out;
}

InstanceSpec instance_spec_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw std::invalid_argument("expected an instance spec object");
  InstanceSpec spec;
  if (j.contains("kind")) spec.kind = j["kind"].get<std::string>();
  if (j.contains("n")) spec.n = j["n"].get<long>();
  if (j.contains("rows")) spec.rows = j["rows"].get<long>();
  if (j.contains("cols")) spec.cols = j["cols"].get<long>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("range")) spec.range = j["range"].get<long>();
  if (j.contains("den")) spec.den = j["den"].get<long>();
  if (j.contains("step")) {
    const nlohmann::json& s = j["step"];
    if (!s.is_array() || s.size() != 2)
      throw std::invalid_argument("expected step as [x, y]");
    spec.step = Point2{parse_rational(s[0].get<std::string>()),
                       parse_rational(s[1].get<std::string>())};
  }
  if (j.contains("config"))
    spec.base_config = config_from_json(j["config"].dump());
  return spec;
}

}  // namespace ddgeom
