#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "ddgeom.h"

namespace {

std::string take(char* text) {
  REQUIRE(text != nullptr);
  std::string out(text);
  ddg_free_string(text);
  return out;
}

}  // namespace

TEST_CASE("version and error channel") {
  REQUIRE(ddg_version() != nullptr);
  CHECK(std::strlen(ddg_version()) > 0);

  CHECK(ddg_config_parse("%") == nullptr);
  REQUIRE(ddg_last_error() != nullptr);
  CHECK(std::strlen(ddg_last_error()) > 0);
}

TEST_CASE("config handles round-trip through JSON") {
  ddg_config* config =
      ddg_config_parse(R"({"points":[[0,0],[1,0],[0,1],[1,1]]})");
  REQUIRE(config != nullptr);
  CHECK(ddg_config_size(config) == 4);

  const std::string text = take(ddg_config_to_json(config));
  ddg_config* again = ddg_config_parse(text.c_str());
  REQUIRE(again != nullptr);
  CHECK(take(ddg_config_to_json(again)) == text);
  ddg_config_free(again);
  ddg_config_free(config);

  CHECK(ddg_config_parse(R"({"points":[[0,0],[0,0]]})") == nullptr);
  CHECK(ddg_config_size(nullptr) == -1);
}

TEST_CASE("line family, rich points and reports through the boundary") {
  ddg_config* config =
      ddg_config_parse(R"({"points":[[0,0],[1,0],[0,1],[1,1]]})");
  REQUIRE(config != nullptr);
  ddg_lines* lines = ddg_lines_from_config(config);
  REQUIRE(lines != nullptr);
  CHECK(ddg_lines_size(lines) == 16);

  const std::string ltext = take(ddg_lines_to_json(lines));
  ddg_lines* reparsed = ddg_lines_parse(ltext.c_str());
  REQUIRE(reparsed != nullptr);
  CHECK(ddg_lines_size(reparsed) == 16);
  ddg_lines_free(reparsed);

  ddg_richmap* map = ddg_rich_points(lines, 2);
  REQUIRE(map != nullptr);
  const auto report = nlohmann::json::parse(take(ddg_richmap_report(map)));
  CHECK(report["total_lines"] == 16);
  CHECK(report["intersecting_pairs"] == 30);

  CHECK(ddg_richmap_count_at_least(map, 2) == report["rich_points"]);
  CHECK(ddg_richmap_count_at_least(map, 1) == -1);

  const auto points = nlohmann::json::parse(
      take(ddg_richmap_points_at_least(map, 2)));
  CHECK(points.size() == report["rich_points"].get<std::size_t>());

  ddg_richmap_free(map);
  ddg_lines_free(lines);
  ddg_config_free(config);
}

TEST_CASE("census and distance bound through the boundary") {
  ddg_config* config =
      ddg_config_parse(R"({"points":[[0,0],[1,0],[0,1],[1,1]]})");
  REQUIRE(config != nullptr);

  const auto brute =
      nlohmann::json::parse(take(ddg_quadruple_census(config, 1, 1)));
  const auto rich =
      nlohmann::json::parse(take(ddg_quadruple_census(config, 0, 2)));
  CHECK(brute["total"] == 80);
  CHECK(brute["parallel"] == 20);
  CHECK(brute["intersecting"] == 60);
  CHECK(brute == rich);

  const auto dd = nlohmann::json::parse(take(ddg_dd_bound(config, 1)));
  CHECK(dd["distinct"] == 2);
  CHECK(dd["bound"] == "8/5");

  ddg_config_free(config);
}

TEST_CASE("generation dispatches by kind and validates shape") {
  ddg_config* grid =
      ddg_generate_config(R"({"kind":"grid2d","rows":3,"cols":3})");
  REQUIRE(grid != nullptr);
  CHECK(ddg_config_size(grid) == 9);

  const auto dd = nlohmann::json::parse(take(ddg_dd_bound(grid, 1)));
  CHECK(dd["distinct"] == 5);
  ddg_config_free(grid);

  ddg_lines* pencil = ddg_generate_lines(R"({"kind":"pencil","n":9})");
  REQUIRE(pencil != nullptr);
  CHECK(ddg_lines_size(pencil) == 9);

  ddg_richmap* map = ddg_rich_points(pencil, 1);
  REQUIRE(map != nullptr);
  const auto bigr = nlohmann::json::parse(take(ddg_verify_bigr(map, 7)));
  CHECK(bigr["bound"] == "18/7");
  CHECK(ddg_verify_bigr(map, 6) == nullptr);
  CHECK(std::strlen(ddg_last_error()) > 0);

  const auto szt = nlohmann::json::parse(take(ddg_verify_szt(map)));
  CHECK(szt["max_ratio"] == "9/10");

  ddg_richmap_free(map);
  ddg_lines_free(pencil);

  CHECK(ddg_generate_lines(R"({"kind":"grid2d","rows":2,"cols":2})") ==
        nullptr);
  CHECK(ddg_generate_config(R"({"kind":"pencil","n":3})") == nullptr);
  CHECK(ddg_generate_config(R"({"kind":"nope"})") == nullptr);
}
