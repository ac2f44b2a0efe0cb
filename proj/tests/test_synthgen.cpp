#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "motor/metrics.hpp"
#include "motor/png_io.hpp"
#include "motor/synthgen.hpp"

using namespace motor;
namespace fs = std::filesystem;

TEST_CASE("generation is byte-identical for a fixed seed") {
  GeneratorSpec spec;
  spec.n_samples = 10;
  spec.model = paper_model();
  spec.seed = 314;
  auto a = serialize_manifest(generate(spec));
  auto b = serialize_manifest(generate(spec));
  CHECK(a == b);
  spec.seed = 315;
  CHECK(serialize_manifest(generate(spec)) != a);
}

TEST_CASE("generated manifest loads through parse_manifest at paper scale") {
  GeneratorSpec spec;
  spec.n_samples = 1440;
  spec.model = paper_model();
  spec.seed = 1;
  auto samples = generate(spec);
  auto reparsed = parse_manifest(serialize_manifest(samples));
  REQUIRE(reparsed.size() == 1440);
  for (const auto& s : reparsed) {
    CHECK(s.gold.has_value());
    CHECK(s.duration_s >= 0);
    CHECK(s.group_size >= 2);
    CHECK(s.group_size <= 4);
  }
}

TEST_CASE("keyword transcripts embed one phrase per gold label") {
  GeneratorSpec spec;
  spec.n_samples = 20;
  spec.model = paper_model();
  spec.seed = 8;
  for (const auto& s : generate(spec)) {
    CHECK(s.transcript.find(phrase_for(s.gold->behavior)) != std::string::npos);
    CHECK(s.transcript.find(phrase_for(s.gold->cognition)) != std::string::npos);
    CHECK(s.transcript.find(phrase_for(s.gold->emotion)) != std::string::npos);
  }
  spec.transcript_style = TranscriptStyle::Plain;
  auto plain = generate(spec);
  CHECK(plain[0].transcript == plain[1].transcript);
}

TEST_CASE("empirical distributions recover the generating model") {
  GeneratorSpec spec;
  spec.n_samples = 60000;
  spec.model = paper_model();
  spec.seed = 99;
  auto samples = generate(spec);

  std::vector<MentalStateTriplet> gold;
  gold.reserve(samples.size());
  for (const auto& s : samples) gold.push_back(*s.gold);

  auto marg = marginalize(spec.model);
  std::array<int, 3> count_b{};
  for (const auto& t : gold) ++count_b[size_t(t.behavior)];
  for (size_t i = 0; i < 3; ++i)
    CHECK(std::abs(count_b[i] / double(gold.size()) - marg.behavior[i]) < 0.015);

  // flow round-trip: empirical B->C rows near the generating table
  auto flow = flow_statistics(gold);
  for (size_t b = 0; b < 3; ++b) {
    REQUIRE(flow.behavior_to_cognition.row_support[b] > 0);
    for (size_t c = 0; c < 4; ++c)
      CHECK(std::abs(flow.behavior_to_cognition.rows[b][c] -
                     spec.model.p_cognition_given_behavior[b][c]) < 0.015);
  }
}

TEST_CASE("write_frames materializes square placeholder frames") {
  fs::path root = fs::temp_directory_path() / "motor_synth_frames_test";
  fs::remove_all(root);
  GeneratorSpec spec;
  spec.n_samples = 2;
  spec.model = paper_model();
  spec.seed = 3;
  auto samples = generate(spec, (root / "frames").string());
  write_frames(samples, 448, 8);
  for (const auto& s : samples)
    for (int i = 0; i < 8; ++i) {
      auto dims = read_png_dims(s.frames_dir + "/frame_" + std::to_string(i) + ".png");
      REQUIRE(dims.has_value());
      CHECK(dims->width == 448);
      CHECK(dims->height == 448);
    }
  fs::remove_all(root);
}
