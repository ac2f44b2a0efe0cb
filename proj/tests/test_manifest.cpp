#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motor/manifest.hpp"

using namespace motor;

namespace {

const char* kLine1 =
    R"({"clip_id":"c1","frames_dir":"f/c1","transcript":"hello","duration_s":6.1,"group_size":3,"gold":{"behavior":"Monitoring","cognition":"C_Negative","emotion":"E_Neutral"}})";
const char* kLine2 =
    R"({"clip_id":"c2","frames_dir":"f/c2","transcript":"","duration_s":0,"group_size":null,"gold":null})";

}  // namespace

TEST_CASE("two-line manifest parses in file order") {
  auto samples = parse_manifest(std::string(kLine1) + "\n" + kLine2 + "\n");
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].clip_id == "c1");
  CHECK(samples[0].transcript == "hello");
  CHECK(samples[0].duration_s == doctest::Approx(6.1));
  CHECK(samples[0].group_size == 3);
  REQUIRE(samples[0].gold.has_value());
  CHECK(samples[0].gold->behavior == BehaviorLabel::Monitoring);
  CHECK(samples[0].gold->cognition == CognitionLabel::Negative);
  CHECK(samples[1].clip_id == "c2");
  CHECK_FALSE(samples[1].gold.has_value());
  CHECK_FALSE(samples[1].group_size.has_value());
}

TEST_CASE("empty input yields empty list") {
  CHECK(parse_manifest("").empty());
  CHECK(parse_manifest("\n\n  \n").empty());
}

TEST_CASE("missing transcript field names the line") {
  std::string bad = std::string(kLine1) + "\n" +
                    R"({"clip_id":"c2","frames_dir":"f","duration_s":1})" + "\n";
  CHECK_THROWS_WITH_AS(parse_manifest(bad),
                       "manifest line 2: missing field 'transcript'", ManifestError);
}

TEST_CASE("duplicate clip_id rejected") {
  std::string dup = std::string(kLine1) + "\n" + kLine1 + "\n";
  CHECK_THROWS_AS(parse_manifest(dup), ManifestError);
}

TEST_CASE("malformed JSON line rejected with line number") {
  try {
    parse_manifest("{not json\n");
    FAIL("expected throw");
  } catch (const ManifestError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("negative duration rejected") {
  CHECK_THROWS_AS(
      parse_manifest(R"({"clip_id":"c","frames_dir":"f","transcript":"t","duration_s":-1})"),
      ManifestError);
}

TEST_CASE("unknown gold label rejected") {
  CHECK_THROWS_AS(
      parse_manifest(
          R"({"clip_id":"c","frames_dir":"f","transcript":"t","duration_s":1,"gold":{"behavior":"Watching","cognition":"C_Neutral","emotion":"E_Neutral"}})"),
      ManifestError);
}

TEST_CASE("serialize-parse round trip is the identity") {
  auto samples = parse_manifest(std::string(kLine1) + "\n" + kLine2 + "\n");
  auto again = parse_manifest(serialize_manifest(samples));
  REQUIRE(again.size() == samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    CHECK(again[i].clip_id == samples[i].clip_id);
    CHECK(again[i].transcript == samples[i].transcript);
    CHECK(again[i].gold.has_value() == samples[i].gold.has_value());
  }
  // determinism: identical bytes in, identical bytes out
  CHECK(serialize_manifest(samples) == serialize_manifest(again));
}
