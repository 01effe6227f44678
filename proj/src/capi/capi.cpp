#include "ddgeom.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/es_family.hpp"
#include "core/generators.hpp"
#include "core/incidence.hpp"
#include "core/json_io.hpp"
#include "core/partition.hpp"

#define DDG_API __attribute__((visibility("default")))

struct ddg_config {
  ddgeom::PlanarConfig value;
};

struct ddg_lines {
  std::vector<ddgeom::Line3> value;
};

struct ddg_richmap {
  ddgeom::RichPointMap value;
};

struct ddg_points3 {
  std::vector<ddgeom::Point3> value;
};

struct ddg_partition {
  ddgeom::PartitionResult value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

/// Runs fn, routing any exception into the thread-local error slot and
/// returning fail instead.
template <typename R, typename F>
R guarded(R fail, F&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    set_error(e.what());
    return fail;
  } catch (...) {
    set_error("unknown error");
    return fail;
  }
}

}  // namespace

extern "C" {

DDG_API const char* ddg_version(void) { return "0.1.0"; }

DDG_API const char* ddg_last_error(void) { return g_last_error.c_str(); }

DDG_API void ddg_free_string(char* text) { std::free(text); }

DDG_API ddg_config* ddg_config_parse(const char* json_text) {
  return guarded<ddg_config*>(nullptr, [&] {
    if (json_text == nullptr) throw std::invalid_argument("null JSON");
    return new ddg_config{ddgeom::config_from_json(json_text)};
  });
}

DDG_API void ddg_config_free(ddg_config* config) { delete config; }

DDG_API long ddg_config_size(const ddg_config* config) {
  return guarded<long>(-1, [&] {
    if (config == nullptr) throw std::invalid_argument("null config");
    return static_cast<long>(config->value.points.size());
  });
}

DDG_API char* ddg_config_to_json(const ddg_config* config) {
  return guarded<char*>(nullptr, [&] {
    if (config == nullptr) throw std::invalid_argument("null config");
    return dup_string(ddgeom::config_to_json(config->value));
  });
}

DDG_API ddg_lines* ddg_lines_parse(const char* json_text) {
  return guarded<ddg_lines*>(nullptr, [&] {
    if (json_text == nullptr) throw std::invalid_argument("null JSON");
    return new ddg_lines{ddgeom::lines_from_json(json_text)};
  });
}

DDG_API void ddg_lines_free(ddg_lines* lines) { delete lines; }

DDG_API long ddg_lines_size(const ddg_lines* lines) {
  return guarded<long>(-1, [&] {
    if (lines == nullptr) throw std::invalid_argument("null lines");
    return static_cast<long>(lines->value.size());
  });
}

DDG_API char* ddg_lines_to_json(const ddg_lines* lines) {
  return guarded<char*>(nullptr, [&] {
    if (lines == nullptr) throw std::invalid_argument("null lines");
    return dup_string(ddgeom::lines_to_json(lines->value));
  });
}

DDG_API ddg_lines* ddg_lines_from_config(const ddg_config* config) {
  return guarded<ddg_lines*>(nullptr, [&] {
    if (config == nullptr) throw std::invalid_argument("null config");
    auto out = new ddg_lines{};
    for (const ddgeom::ESLine& entry : ddgeom::build_line_family(config->value))
      out->value.push_back(entry.line);
    return out;
  });
}

DDG_API ddg_config* ddg_generate_config(const char* spec_json) {
  return guarded<ddg_config*>(nullptr, [&] {
    if (spec_json == nullptr) throw std::invalid_argument("null spec");
    ddgeom::GeneratedInstance instance =
        ddgeom::generate(ddgeom::instance_spec_from_json(spec_json));
    if (!instance.config.has_value())
      throw std::invalid_argument("instance kind does not produce a config");
    return new ddg_config{std::move(*instance.config)};
  });
}

DDG_API ddg_lines* ddg_generate_lines(const char* spec_json) {
  return guarded<ddg_lines*>(nullptr, [&] {
    if (spec_json == nullptr) throw std::invalid_argument("null spec");
    ddgeom::GeneratedInstance instance =
        ddgeom::generate(ddgeom::instance_spec_from_json(spec_json));
    if (!instance.lines.has_value())
      throw std::invalid_argument("instance kind does not produce lines");
    return new ddg_lines{std::move(*instance.lines)};
  });
}

DDG_API ddg_richmap* ddg_rich_points(const ddg_lines* lines, int workers) {
  return guarded<ddg_richmap*>(nullptr, [&] {
    if (lines == nullptr) throw std::invalid_argument("null lines");
    return new ddg_richmap{ddgeom::compute_rich_points(lines->value, workers)};
  });
}

DDG_API void ddg_richmap_free(ddg_richmap* map) { delete map; }

DDG_API char* ddg_richmap_report(const ddg_richmap* map) {
  return guarded<char*>(nullptr, [&] {
    if (map == nullptr) throw std::invalid_argument("null map");
    return dup_string(ddgeom::richmap_report_json(map->value));
  });
}

DDG_API long ddg_richmap_count_at_least(const ddg_richmap* map, long r) {
  return guarded<long>(-1, [&] {
    if (map == nullptr) throw std::invalid_argument("null map");
    return ddgeom::p_r_count(map->value, r);
  });
}

DDG_API char* ddg_richmap_points_at_least(const ddg_richmap* map, long r) {
  return guarded<char*>(nullptr, [&] {
    if (map == nullptr) throw std::invalid_argument("null map");
    return dup_string(ddgeom::points3_to_json(ddgeom::p_r(map->value, r)));
  });
}

DDG_API char* ddg_verify_bigr(const ddg_richmap* map, long r) {
  return guarded<char*>(nullptr, [&] {
    if (map == nullptr) throw std::invalid_argument("null map");
    return dup_string(
        ddgeom::bigr_report_json(ddgeom::verify_bigr(map->value, r), r));
  });
}

DDG_API char* ddg_verify_szt(const ddg_richmap* map) {
  return guarded<char*>(nullptr, [&] {
    if (map == nullptr) throw std::invalid_argument("null map");
    return dup_string(ddgeom::szt_report_json(
        ddgeom::verify_szemeredi_trotter(map->value), map->value.total_lines));
  });
}

DDG_API char* ddg_quadruple_census(const ddg_config* config, int bruteforce,
                                   int workers) {
  return guarded<char*>(nullptr, [&] {
    if (config == nullptr) throw std::invalid_argument("null config");
    const ddgeom::QuadrupleCensus census =
        bruteforce != 0
            ? ddgeom::quadruple_census_bruteforce(config->value)
            : ddgeom::quadruple_census_via_rich_points(config->value, workers);
    return dup_string(ddgeom::census_report_json(census));
  });
}

DDG_API char* ddg_dd_bound(const ddg_config* config, int workers) {
  return guarded<char*>(nullptr, [&] {
    if (config == nullptr) throw std::invalid_argument("null config");
    return dup_string(
        ddgeom::dd_report_json(ddgeom::dd_lower_bound(config->value, workers)));
  });
}

DDG_API ddg_points3* ddg_points3_parse(const char* json_text) {
  return guarded<ddg_points3*>(nullptr, [&] {
    if (json_text == nullptr) throw std::invalid_argument("null JSON");
    return new ddg_points3{ddgeom::points3_from_json(json_text)};
  });
}

DDG_API void ddg_points3_free(ddg_points3* points) { delete points; }

DDG_API long ddg_points3_size(const ddg_points3* points) {
  return guarded<long>(-1, [&] {
    if (points == nullptr) throw std::invalid_argument("null points");
    return static_cast<long>(points->value.size());
  });
}

DDG_API char* ddg_points3_to_json(const ddg_points3* points) {
  return guarded<char*>(nullptr, [&] {
    if (points == nullptr) throw std::invalid_argument("null points");
    return dup_string(ddgeom::points3_to_json(points->value));
  });
}

DDG_API ddg_points3* ddg_points3_from_config(const ddg_config* config) {
  return guarded<ddg_points3*>(nullptr, [&] {
    if (config == nullptr) throw std::invalid_argument("null config");
    std::vector<ddgeom::Point3> lifted;
    lifted.reserve(config->value.points.size());
    for (const ddgeom::Point2& p : config->value.points) {
      lifted.push_back(ddgeom::Point3{p.x, p.y, ddgeom::Rational(0)});
    }
    return new ddg_points3{std::move(lifted)};
  });
}

DDG_API ddg_partition* ddg_partition_points(const ddg_points3* points,
                                            const char* backend, int degree,
                                            unsigned long long seed) {
  return guarded<ddg_partition*>(nullptr, [&] {
    if (points == nullptr) throw std::invalid_argument("null points");
    if (backend == nullptr) throw std::invalid_argument("null backend");
    const std::string name = backend;
    if (name == "planes") {
      return new ddg_partition{
          ddgeom::partition_planes(points->value, degree, seed)};
    }
    if (name == "lifted") {
      return new ddg_partition{
          ddgeom::partition_lifted(points->value, degree, seed)};
    }
    throw std::invalid_argument("unknown partition backend: " + name);
  });
}

DDG_API void ddg_partition_free(ddg_partition* partition) { delete partition; }

DDG_API char* ddg_partition_report(const ddg_partition* partition,
                                   const ddg_points3* points) {
  return guarded<char*>(nullptr, [&] {
    if (partition == nullptr) throw std::invalid_argument("null partition");
    if (points == nullptr) throw std::invalid_argument("null points");
    const ddgeom::PolyhamReport report =
        ddgeom::verify_polyham(partition->value, points->value);
    return dup_string(ddgeom::partition_report_json(partition->value, report));
  });
}

DDG_API char* ddg_line_cell_incidence(const ddg_lines* lines,
                                      const ddg_partition* partition) {
  return guarded<char*>(nullptr, [&] {
    if (lines == nullptr) throw std::invalid_argument("null lines");
    if (partition == nullptr) throw std::invalid_argument("null partition");
    const ddgeom::LineCellIncidence incidence =
        ddgeom::line_cell_incidence(lines->value, partition->value);
    return dup_string(
        ddgeom::line_incidence_report_json(incidence, partition->value));
  });
}

}  // extern "C"
