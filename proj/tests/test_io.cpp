#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "defseq/errors.hpp"
#include "defseq/io.hpp"
#include "defseq/models.hpp"

using namespace defseq;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("defseq_test_" + name)).string();
}

void expect_format_error(const std::string& text) {
  CAPTURE(text);
  CHECK_THROWS_AS(tuple_from_json(nlohmann::json::parse(text)), FormatError);
}

}  // namespace

TEST_CASE("tuple round trip is bit-exact") {
  const auto t = random_contractive(3, 5, 2, 123);
  const std::string path = temp_path("roundtrip.json");
  write_tuple(t, path, Json{{"generator", "random"}, {"seed", 123}});
  const TupleFile f = read_tuple(path);
  REQUIRE(f.tuple.arity() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(f.tuple[i] == t[i]);
  CHECK(f.meta["seed"] == 123);
  CHECK(f.meta["label"] == t.label());
  std::remove(path.c_str());

  const auto fock = fock_creation(2, 2);
  const auto back = tuple_from_json(nlohmann::json::parse(tuple_to_json(fock).dump()));
  CHECK(back.tuple[1] == fock[1]);
}

TEST_CASE("malformed tuple files are rejected") {
  expect_format_error(R"([])");
  expect_format_error(R"({"format":"other","version":1,"d":1,"dim":1,"ops":[[[[0,0]]]]})");
  expect_format_error(R"({"format":"defseq.tuple","version":2,"d":1,"dim":1,"ops":[[[[0,0]]]]})");
  expect_format_error(R"({"format":"defseq.tuple","version":1,"d":2,"dim":1,"ops":[[[[0,0]]]]})");
  expect_format_error(R"({"format":"defseq.tuple","version":1,"d":1,"dim":2,"ops":[[[[0,0]]]]})");
  expect_format_error(R"({"format":"defseq.tuple","version":1,"d":1,"dim":1,"ops":[[[[0]]]]})");
  expect_format_error(R"({"format":"defseq.tuple","version":1,"d":1,"dim":1,"ops":[[[["a",0]]]]})");
  expect_format_error(R"({"format":"defseq.tuple","version":1,"d":-1,"dim":1,"ops":[]})");
  expect_format_error(R"({"format":"defseq.tuple","version":1,"d":1,"dim":1,"ops":[[[[0,0]]]],"meta":3})");
  CHECK_NOTHROW(tuple_from_json(
      nlohmann::json::parse(R"({"format":"defseq.tuple","version":1,"d":1,"dim":1,"ops":[[[[0.5,-1]]]]})")));
}

TEST_CASE("file errors") {
  CHECK_THROWS_AS(read_tuple("/nonexistent/defseq.json"), FormatError);
  const std::string path = temp_path("garbage.json");
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(read_tuple(path), FormatError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_json_file(Json::object(), "/nonexistent/dir/out.json"), FormatError);
}

TEST_CASE("report serialization") {
  const auto r = defect_sequence(symmetric_fock_shift(2, 2), 5);
  const Json j = to_json(r);
  CHECK(j["deltas"] == Json::array({1, 3, 6}));
  CHECK(j["commuting"] == true);
  CHECK(j["tolerance"]["rtol"] == 1e-9);
  const Json h = report_header("defect");
  CHECK(h["tool"] == "defseq");
  CHECK(h["rng"] == "splitmix64-v1");
  CHECK(h.contains("kernel"));
  const Json c = to_json(classify(fock_creation(2, 2)));
  CHECK(c["purity"]["status"] == "pure");
  CHECK(c["commutant_dim"] == 1);
}
