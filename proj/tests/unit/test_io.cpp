#include "doctest.h"
#include "phaseeval/io.hpp"
#include "temp_dir.hpp"

using namespace phaseeval;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string manifest_json(const std::string& videos) {
  return "{\"phase_count\": 7, \"split\": \"32:8:40\", \"videos\": [" + videos + "]}";
}

void write_pair(const testing::TempDir& dir) {
  write_text_file(dir.file("a1.txt"), "0\n0\n1\n");
  write_text_file(dir.file("a2.txt"), "2\n3\n");
  write_text_file(dir.file("p/r0/v1.txt"), "0\n1\n1\n");
  write_text_file(dir.file("p/r1/v1.txt"), "0\n0\n1\n");
  write_text_file(dir.file("p/r0/v2.txt"), "2\n2\n");
  write_text_file(dir.file("p/r1/v2.txt"), "3\n3\n");
}

}  // namespace

TEST_CASE("label files") {
  CHECK(parse_labels("0\n0\n1\n").labels == std::vector<PhaseId>{0, 0, 1});
  CHECK(parse_labels("0\n0\n1").labels == std::vector<PhaseId>{0, 0, 1});
  CHECK(parse_labels("4\r\n5\r\n").labels == std::vector<PhaseId>{4, 5});
  try {
    parse_labels("0\n\n1\n", "f.txt");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.content.empty());
  }
  try {
    parse_labels("0\nx3\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.content == "x3");
  }
  CHECK(code_of([] { parse_labels("-1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_labels(""); }) == ErrorCode::EmptyFile);
  CHECK(code_of([] { load_labels("/nonexistent/labels.txt"); }) == ErrorCode::MissingFile);
}

TEST_CASE("labels round-trip through a file") {
  testing::TempDir dir;
  const LabelSequence seq({0, 6, 6, 2});
  write_labels(dir.file("x/y.txt"), seq);
  CHECK(load_labels(dir.file("x/y.txt")) == seq);
  CHECK(format_labels(seq) == "0\n6\n6\n2\n");
}

TEST_CASE("manifest loading") {
  testing::TempDir dir;
  write_pair(dir);
  const std::string text = manifest_json(
      R"({"id": 1, "annotation": "a1.txt", "predictions": {"r1": "p/r1/v1.txt", "r0": "p/r0/v1.txt"}},
         {"id": 2, "annotation": "a2.txt", "predictions": {"r0": "p/r0/v2.txt", "r1": "p/r1/v2.txt"}})");
  write_text_file(dir.file("manifest.json"), text);
  const auto m = load_manifest(dir.file("manifest.json"));
  CHECK(m.phase_count == 7);
  CHECK(m.split == "32:8:40");
  CHECK(m.run_ids == std::vector<std::string>{"r0", "r1"});
  REQUIRE(m.videos.size() == 2);

  const auto in = load_input(m, 2);
  CHECK(in.run_ids == m.run_ids);
  CHECK(in.videos[0].annotation.labels == std::vector<PhaseId>{0, 0, 1});
  CHECK(in.videos[0].runs[0].labels == std::vector<PhaseId>{0, 1, 1});
  CHECK(in.videos[1].runs[1].labels == std::vector<PhaseId>{3, 3});

  CHECK(load_manifest(dir.file("manifest.json")).videos[1].annotation == m.videos[1].annotation);
  CHECK_NOTHROW(parse_manifest(format_manifest(m), dir.path().string()));
}

TEST_CASE("manifest errors") {
  testing::TempDir dir;
  write_pair(dir);
  const auto base = dir.path().string();
  CHECK(code_of([&] {
          parse_manifest(manifest_json(R"({"id": 1, "annotation": "a1.txt", "predictions": {"r0": "p/r0/v1.txt"}},
             {"id": 2, "annotation": "a2.txt", "predictions": {"r0": "p/r0/v2.txt", "r1": "p/r1/v2.txt"}})"),
                         base);
        }) == ErrorCode::RaggedRuns);
  CHECK(code_of([&] {
          parse_manifest(manifest_json(R"({"id": 1, "annotation": "a1.txt", "predictions": {"r0": "missing.txt"}})"), base);
        }) == ErrorCode::MissingFile);
  CHECK(code_of([&] {
          parse_manifest(manifest_json(R"({"id": 1, "annotation": "a1.txt", "predictions": {"r0": "p/r0/v1.txt"}},
             {"id": 1, "annotation": "a1.txt", "predictions": {"r0": "p/r0/v1.txt"}})"),
                         base);
        }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { parse_manifest("{\"videos\": []}", base); }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { parse_manifest("not json", base); }) == ErrorCode::SchemaError);
  CHECK(code_of([&] { load_manifest(dir.file("none.json")); }) == ErrorCode::MissingFile);

  // lengths are checked when the labels are read
  const auto m = parse_manifest(
      manifest_json(R"({"id": 1, "annotation": "a1.txt", "predictions": {"r0": "p/r0/v2.txt"}})"), base);
  CHECK(code_of([&] { load_input(m); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("validate_input") {
  EvaluationInput in;
  in.phase_count = 7;
  CHECK_THROWS_AS(validate_input(in), Error);
  in.run_ids = {"r0", "r1"};
  in.videos.push_back({1, LabelSequence({0, 1}), {LabelSequence({0, 1})}});
  CHECK(code_of([&] { validate_input(in); }) == ErrorCode::RaggedRuns);
  in.videos[0].runs.push_back(LabelSequence({0, 8}));
  CHECK(code_of([&] { validate_input(in); }) == ErrorCode::OutOfRangeLabel);
  in.videos[0].runs[1] = LabelSequence({0, 1});
  CHECK_NOTHROW(validate_input(in));
}
