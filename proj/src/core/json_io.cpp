#include "core/json_io.hpp"

#include <iterator>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace ddgeom {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  return j;
}

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational as \"num/den\" or integer");
}

json rational_to(const Rational& q) { return rational_to_string(q); }

Point2 point2_from(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected a point as [x, y]");
  return Point2{rational_from(j[0]), rational_from(j[1])};
}

json point2_to(const Point2& p) {
  return json::array({rational_to(p.x), rational_to(p.y)});
}

Point3 point3_from(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("expected a point as [x, y, z]");
  return Point3{rational_from(j[0]), rational_from(j[1]), rational_from(j[2])};
}

json point3_to(const Point3& p) {
  return json::array({rational_to(p.x), rational_to(p.y), rational_to(p.z)});
}

json line_to(const Line3& line) {
  json j;
  j["base"] = point3_to(line.base());
  j["dir"] = point3_to(line.dir());
  return j;
}

Line3 line_from(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("dir"))
    throw std::invalid_argument("expected a line as {base, dir}");
  return Line3(point3_from(j["base"]), point3_from(j["dir"]));
}

json poly_terms_to(const TriPoly& poly) {
  json terms = json::array();
  for (const auto& [exps, coef] : poly.terms()) {
    json term;
    term["exps"] = json::array({exps[0], exps[1], exps[2]});
    term["coef"] = rational_to(coef);
    terms.push_back(std::move(term));
  }
  return terms;
}

TriPoly poly_from_terms(const json& terms) {
  if (!terms.is_array()) throw std::invalid_argument("expected a term array");
  TriPoly::TermMap map;
  for (const json& term : terms) {
    if (!term.is_object() || !term.contains("exps") || !term.contains("coef"))
      throw std::invalid_argument("expected a term as {exps, coef}");
    const json& e = term["exps"];
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("expected exps as [e0, e1, e2]");
    Monomial m{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
    if (m[0] < 0 || m[1] < 0 || m[2] < 0)
      throw std::invalid_argument("negative exponent");
    Rational c = rational_from(term["coef"]);
    if (c != 0) map[m] += c;
  }
  for (auto it = map.begin(); it != map.end();)
    it = it->second == 0 ? map.erase(it) : std::next(it);
  return TriPoly(std::move(map));
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace

std::string config_to_json(const PlanarConfig& config) {
  json points = json::array();
  for (const Point2& p : config.points) points.push_back(point2_to(p));
  json j;
  j["points"] = std::move(points);
  return dump(j);
}

PlanarConfig config_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw std::invalid_argument("expected {\"points\": [[x, y], ...]}");
  PlanarConfig config;
  for (const json& p : j["points"]) config.points.push_back(point2_from(p));
  validate_config(config);
  return config;
}

std::string lines_to_json(const std::vector<Line3>& lines) {
  json j = json::array();
  for (const Line3& line : lines) j.push_back(line_to(line));
  return dump(j);
}

std::vector<Line3> lines_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_array()) throw std::invalid_argument("expected a line array");
  std::vector<Line3> lines;
  for (const json& item : j) lines.push_back(line_from(item));
  return lines;
}

std::string points3_to_json(const std::vector<Point3>& points) {
  json j = json::array();
  for (const Point3& p : points) j.push_back(point3_to(p));
  return dump(j);
}

std::vector<Point3> points3_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_array()) throw std::invalid_argument("expected a point array");
  std::vector<Point3> points;
  for (const json& item : j) points.push_back(point3_from(item));
  return points;
}

std::string poly_to_json(const TriPoly& poly) {
  json j;
  j["terms"] = poly_terms_to(poly);
  if (poly.has_factors()) {
    json factors = json::array();
    for (const TriPoly& f : poly.factors()) {
      json fj;
      fj["terms"] = poly_terms_to(f);
      factors.push_back(std::move(fj));
    }
    j["factors"] = std::move(factors);
  }
  return dump(j);
}

TriPoly poly_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("terms"))
    throw std::invalid_argument("expected {\"terms\": [...]}");
  if (j.contains("factors")) {
    std::vector<TriPoly> factors;
    for (const json& fj : j["factors"]) {
      if (!fj.is_object() || !fj.contains("terms"))
        throw std::invalid_argument("expected factor as {\"terms\": [...]}");
      factors.push_back(poly_from_terms(fj["terms"]));
    }
    TriPoly product = TriPoly::product_of(factors);
    if (product.terms() != poly_from_terms(j["terms"]).terms())
      throw std::invalid_argument("factor product disagrees with terms");
    return product;
  }
  return poly_from_terms(j["terms"]);
}

std::string richmap_report_json(const RichPointMap& map) {
  json histogram = json::array();
  for (const auto& [mult, count] : multiplicity_histogram(map))
    histogram.push_back(json::array({mult, count}));

  json cumulative = json::array();
  {
    const auto hist = multiplicity_histogram(map);
    long at_least = 0;
    std::vector<std::pair<long, long>> rows;
    for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
      at_least += it->second;
      rows.emplace_back(it->first, at_least);
    }
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
      cumulative.push_back(json::array({it->first, it->second}));
  }

  json j;
  j["total_lines"] = map.total_lines;
  j["intersecting_pairs"] = map.intersecting_pairs;
  j["rich_points"] = static_cast<long>(map.entries.size());
  j["histogram"] = std::move(histogram);
  j["cumulative"] = std::move(cumulative);
  return dump(j);
}

std::string census_report_json(const QuadrupleCensus& census) {
  json j;
  j["n"] = census.n;
  j["total"] = census.total;
  j["parallel"] = census.parallel;
  j["intersecting"] = census.intersecting;
  return dump(j);
}

std::string dd_report_json(const DistinctDistanceReport& report) {
  json j;
  j["distinct"] = report.distinct;
  j["bound"] = rational_to(report.bound);
  j["bound_approx"] = rational_to_double(report.bound);
  j["census"] = json::parse(census_report_json(report.census));
  return dump(j);
}

std::string bigr_report_json(const BigRReport& report, long r) {
  json j;
  j["r"] = r;
  j["rich_count"] = report.rich_count;
  j["bound"] = rational_to(report.bound);
  j["bound_approx"] = rational_to_double(report.bound);
  j["margin"] = rational_to(report.margin);
  return dump(j);
}

std::string szt_report_json(const SzReport& report, long total_lines) {
  json j;
  j["total_lines"] = total_lines;
  j["max_ratio"] = rational_to(report.max_ratio);
  j["max_ratio_approx"] = rational_to_double(report.max_ratio);
  j["argmax_r"] = report.argmax_r;
  return dump(j);
}

std::string partition_report_json(const PartitionResult& part,
                                  const PolyhamReport& report) {
  json j;
  j["backend"] = part.backend;
  j["degree_budget"] = part.degree_budget;
  j["degree"] = part.poly.degree();
  j["round_degrees"] = part.round_degrees;
  j["fallback_rounds"] = part.fallback_rounds;
  json factors = json::array();
  for (const TriPoly& f : part.factors) {
    factors.push_back(json::parse(poly_to_json(f)));
  }
  j["factors"] = std::move(factors);
  json cells = json::array();
  for (const PartitionCell& cell : part.cells) {
    json c;
    c["signs"] = cell.signs;
    c["count"] = cell.count;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  j["points"] = report.points;
  j["boundary"] = report.boundary;
  j["max_cell"] = report.max_cell;
  j["cells_over_d3"] = rational_to(report.cells_over_d3);
  j["cells_over_d3_approx"] = rational_to_double(report.cells_over_d3);
  j["maxcell_ratio"] = rational_to(report.maxcell_ratio);
  j["maxcell_ratio_approx"] = rational_to_double(report.maxcell_ratio);
  j["planes_bound"] = rational_to(report.planes_bound);
  return dump(j);
}

std::string line_incidence_report_json(const LineCellIncidence& incidence,
                                       const PartitionResult& part) {
  json j;
  const long degree = part.poly.degree();
  const long lines = static_cast<long>(incidence.cells_met.size());
  j["degree"] = degree;
  j["lines"] = lines;
  long in_z = 0;
  json per_line = json::array();
  for (std::size_t li = 0; li < incidence.cells_met.size(); ++li) {
    json row;
    row["in_zero_set"] = incidence.in_zero_set[li] != 0;
    row["cells"] = incidence.cells_met[li];
    per_line.push_back(std::move(row));
    if (incidence.in_zero_set[li]) ++in_z;
  }
  j["per_line"] = std::move(per_line);
  j["lines_in_zero_set"] = in_z;
  j["total_incidences"] = incidence.total_incidences;
  j["max_cells_met"] = incidence.max_cells_met;
  j["incidence_budget"] = (degree + 1) * lines;
  return dump(j);
}

}  // namespace ddgeom
