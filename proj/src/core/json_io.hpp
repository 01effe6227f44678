#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/es_family.hpp"
#include "core/geom.hpp"
#include "core/incidence.hpp"
#include "core/partition.hpp"
#include "core/poly.hpp"

namespace ddgeom {

/// JSON layer. Rationals travel as "num" or "num/den" strings; floating
/// point appears only under keys suffixed "_approx". Emission is
/// deterministic: keys are sorted and element order follows the input.

std::string config_to_json(const PlanarConfig& config);
PlanarConfig config_from_json(const std::string& text);

std::string lines_to_json(const std::vector<Line3>& lines);
std::vector<Line3> lines_from_json(const std::string& text);

std::string points3_to_json(const std::vector<Point3>& points);
std::vector<Point3> points3_from_json(const std::string& text);

std::string poly_to_json(const TriPoly& poly);
TriPoly poly_from_json(const std::string& text);

std::string richmap_report_json(const RichPointMap& map);
std::string census_report_json(const QuadrupleCensus& census);
std::string dd_report_json(const DistinctDistanceReport& report);
std::string bigr_report_json(const BigRReport& report, long r);
std::string szt_report_json(const SzReport& report, long total_lines);
std::string partition_report_json(const PartitionResult& part,
                                  const PolyhamReport& report);
std::string line_incidence_report_json(const LineCellIncidence& incidence,
                                       const PartitionResult& part);

}  // namespace ddgeom
