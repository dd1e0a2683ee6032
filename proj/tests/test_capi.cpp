#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "qmaps/qmaps.h"

namespace fs = std::filesystem;

namespace {
std::string take(char* s) {
  std::string out = s ? s : "";
  qm_string_free(s);
  return out;
}
fs::path scratch(const char* name) {
  auto p = fs::temp_directory_path() / ("qmaps_capi_" + std::string(name));
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("c api: counts") {
  char* s = nullptr;
  REQUIRE(qm_count_maps(3, 2, &s) == QM_OK);
  CHECK(take(s) == "90");
  REQUIRE(qm_partition_function(1, &s) == QM_OK);
  CHECK(take(s) == "4/3");
  CHECK(qm_count_maps(3, 0, &s) == QM_ERR_ARG);
  CHECK(std::strlen(qm_last_error()) > 0);
  CHECK(qm_count_maps(3, 2, nullptr) == QM_ERR_ARG);
}

TEST_CASE("c api: zip and unzip round trip through text") {
  // boundary map: a single quadrangle, boundary half-length 2
  char* s = nullptr;
  REQUIRE(qm_count_maps(1, 2, &s) == QM_OK);
  qm_string_free(s);
  auto dir = scratch("zip");
  REQUIRE(qm_run("oracle", R"({"action":"enumerate","n":1,"p":2})", dir.c_str(), nullptr) == QM_OK);
  std::ifstream in(dir / "oracle_enumerate.maps");
  std::string all((std::istreambuf_iterator<char>(in)), {});
  auto cut = all.find("\n\n");
  std::string first = cut == std::string::npos ? all : all.substr(0, cut + 1);
  qm_map* bm = nullptr;
  REQUIRE(qm_map_parse(first.c_str(), &bm) == QM_OK);
  qm_map* zm = nullptr;
  REQUIRE(qm_zip(bm, 1, 1, &zm) == QM_OK);
  REQUIRE(qm_map_serialize(zm, &s) == QM_OK);
  std::string ztext = take(s);
  CHECK(ztext.find("saw ") != std::string::npos);
  qm_map* zm2 = nullptr;
  REQUIRE(qm_map_parse(ztext.c_str(), &zm2) == QM_OK);
  qm_map* back = nullptr;
  REQUIRE(qm_unzip(zm2, &back) == QM_OK);
  CHECK(qm_map_half_edges(back) == qm_map_half_edges(bm));
  CHECK(qm_map_vertices(back) == qm_map_vertices(bm));
  CHECK(qm_unzip(bm, &back) == QM_ERR_ARG);
  CHECK(qm_zip(bm, 0, 1, &zm) == QM_ERR_ARG);
  qm_map_free(back);
  qm_map_free(zm2);
  qm_map_free(zm);
  qm_map_free(bm);
}

TEST_CASE("c api: parse errors") {
  qm_map* m = nullptr;
  CHECK(qm_map_parse("not a map", &m) == QM_ERR_PARSE);
  CHECK(m == nullptr);
}

TEST_CASE("c api: run writes artifacts and reports errors") {
  auto dir = scratch("run");
  char* s = nullptr;
  REQUIRE(qm_run("enum", R"({"n":3,"p":2})", dir.c_str(), &s) == QM_OK);
  std::string summary = take(s);
  CHECK(summary.find("\"count\": \"90\"") != std::string::npos);
  CHECK(fs::exists(dir / "enum.csv"));
  CHECK(fs::exists(dir / "enum.json"));
  CHECK(qm_run("enum", R"({"n":-1})", dir.c_str(), nullptr) == QM_ERR_ARG);
  CHECK(qm_run("enum", R"({"bogus":1})", dir.c_str(), nullptr) == QM_ERR_ARG);
  CHECK(qm_run("nope", nullptr, dir.c_str(), nullptr) == QM_ERR_UNKNOWN_COMMAND);
  CHECK(qm_run("enum", "{oops", dir.c_str(), nullptr) == QM_ERR_PARSE);
  std::ofstream(dir / "file") << "x";
  CHECK(qm_run("enum", nullptr, (dir / "file" / "sub").c_str(), nullptr) == QM_ERR_IO);
  int n = 0;
  for (auto c = qm_commands(); *c; ++c) ++n;
  CHECK(n == 10);
}
