#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <filesystem>

#include "motor/pipeline.hpp"
#include "motor/synthgen.hpp"

using namespace motor;
namespace fs = std::filesystem;

namespace {

struct SynthFixture {
  fs::path root;
  std::vector<ClipSample> samples;

  explicit SynthFixture(int n, std::int64_t seed = 5) {
    root = fs::temp_directory_path() / ("motor_pipeline_test_" + std::to_string(::getpid()));
    fs::remove_all(root);
    GeneratorSpec spec;
    spec.n_samples = n;
    spec.model = paper_model();
    spec.seed = seed;
    samples = generate(spec, (root / "frames").string());
    write_frames(samples);
  }
  ~SynthFixture() { fs::remove_all(root); }
};

// Counts calls and can be told to fail a specific clip.
class CountingBackend : public Backend {
 public:
  explicit CountingBackend(Backend& inner) : inner_(inner) {}
  ModelResponse complete(const ModelRequest& req) override {
    ++calls;
    image_parts += static_cast<int>(req.frame_refs.size());
    if (req.clip_id == fail_clip) throw BackendUnavailable("injected failure");
    return inner_.complete(req);
  }
  std::string id() const override { return "counting"; }
  std::atomic<int> calls{0};
  std::atomic<int> image_parts{0};
  std::string fail_clip;

 private:
  Backend& inner_;
};

}  // namespace

TEST_CASE("FullMAS with echo-gold reproduces gold in exactly 3 calls") {
  SynthFixture fx(5);
  EchoGoldBackend echo(fx.samples);
  CountingBackend counting(echo);
  PromptEngine prompts;
  RunConfig config;

  for (const auto& s : fx.samples) {
    counting.calls = 0;
    auto t = run_sample(s, config, counting, prompts);
    CHECK_FALSE(t.failed);
    CHECK(counting.calls == 3);
    CHECK(t.backend_calls == 3);
    REQUIRE(t.stages.size() == 3);
    CHECK(t.stages[0].stage == "Behavior");
    CHECK(t.stages[1].stage == "Cognition");
    CHECK(t.stages[2].stage == "Emotion");
    CHECK(t.stages[0].start_ns < t.stages[1].start_ns);
    CHECK(t.stages[1].start_ns < t.stages[2].start_ns);
    REQUIRE(t.predicted.fully_parsed());
    CHECK(*t.predicted.behavior == s.gold->behavior);
    CHECK(*t.predicted.cognition == s.gold->cognition);
    CHECK(*t.predicted.emotion == s.gold->emotion);
  }
}

TEST_CASE("conditioning chain: downstream prompts contain upstream labels") {
  SynthFixture fx(8);
  EchoGoldBackend echo(fx.samples);
  PromptEngine prompts;
  RunConfig config;
  for (const auto& s : fx.samples) {
    auto t = run_sample(s, config, echo, prompts);
    REQUIRE(t.stages.size() == 3);
    std::string b = render_label(*t.predicted.behavior);
    std::string c = render_label(*t.predicted.cognition);
    CHECK(t.stages[1].prompt.find(b) != std::string::npos);
    CHECK(t.stages[2].prompt.find(b) != std::string::npos);
    CHECK(t.stages[2].prompt.find(c) != std::string::npos);
  }
}

TEST_CASE("SinglePass issues exactly one combined call") {
  SynthFixture fx(3);
  EchoGoldBackend echo(fx.samples);
  CountingBackend counting(echo);
  PromptEngine prompts;
  RunConfig config;
  config.mode = RunMode::SinglePass;
  auto t = run_sample(fx.samples[0], config, counting, prompts);
  CHECK(counting.calls == 1);
  REQUIRE(t.stages.size() == 1);
  CHECK(t.stages[0].stage == "Combined");
  REQUIRE(t.predicted.fully_parsed());
  CHECK(*t.predicted.behavior == fx.samples[0].gold->behavior);
}

TEST_CASE("TextOnly sends zero image parts across all three calls") {
  SynthFixture fx(3);
  EchoGoldBackend echo(fx.samples);
  CountingBackend counting(echo);
  PromptEngine prompts;
  RunConfig config;
  config.mode = RunMode::TextOnly;
  auto t = run_sample(fx.samples[0], config, counting, prompts);
  CHECK(counting.calls == 3);
  CHECK(counting.image_parts == 0);
  for (const auto& s : t.stages) CHECK(s.frame_refs.empty());
}

TEST_CASE("NoSRL uses generic prompts throughout") {
  SynthFixture fx(2);
  EchoGoldBackend echo(fx.samples);
  PromptEngine prompts;
  RunConfig config;
  config.mode = RunMode::NoSRL;
  auto t = run_sample(fx.samples[0], config, echo, prompts);
  for (const auto& stage : t.stages)
    for (const auto& sentence : srl_definition_sentences())
      CHECK(stage.prompt.find(sentence) == std::string::npos);
}

TEST_CASE("unparseable stage propagates Unknown downstream") {
  SynthFixture fx(1);
  // behavior stage gets junk, later stages answer cleanly
  ScriptedBackend scripted({{{fx.samples[0].clip_id, Stage::Behavior}, "no label here"},
                            {{fx.samples[0].clip_id, Stage::Cognition}, "Answer: C_Neutral"},
                            {{fx.samples[0].clip_id, Stage::Emotion}, "Answer: E_Neutral"}});
  PromptEngine prompts;
  RunConfig config;
  config.retry_on_unparseable = false;
  auto t = run_sample(fx.samples[0], config, scripted, prompts);
  CHECK_FALSE(t.failed);
  CHECK_FALSE(t.predicted.behavior.has_value());
  CHECK(t.stages[0].extracted == "Unparsed");
  CHECK(t.stages[1].prompt.find("Unknown") != std::string::npos);
  CHECK(t.predicted.cognition == CognitionLabel::Neutral);
}

TEST_CASE("unparseable retry appends the clarification and recounts calls") {
  SynthFixture fx(1);
  ScriptedBackend scripted({{{fx.samples[0].clip_id, Stage::Behavior}, "junk"},
                            {{fx.samples[0].clip_id, Stage::Cognition}, "Answer: C_Neutral"},
                            {{fx.samples[0].clip_id, Stage::Emotion}, "Answer: E_Neutral"}});
  CountingBackend counting(scripted);
  PromptEngine prompts;
  RunConfig config;  // retry_on_unparseable defaults to true
  auto t = run_sample(fx.samples[0], config, counting, prompts);
  CHECK(counting.calls == 4);  // behavior retried once
  CHECK(t.backend_calls == 4);
  CHECK(t.retries == 1);
  CHECK(t.stages[0].calls == 2);
}

TEST_CASE("run_dataset: ordering, call accounting, failure isolation") {
  SynthFixture fx(10);
  EchoGoldBackend echo(fx.samples);
  CountingBackend counting(echo);
  counting.fail_clip = fx.samples[4].clip_id;
  PromptEngine prompts;
  RunConfig config;
  config.max_concurrent_samples = 4;

  auto result = run_dataset(fx.samples, config, counting, prompts);
  REQUIRE(result.transcripts.size() == 10);
  for (size_t i = 0; i < 10; ++i) CHECK(result.transcripts[i].clip_id == fx.samples[i].clip_id);
  CHECK(result.summary.completed == 9);
  CHECK(result.summary.failed == 1);
  CHECK(result.transcripts[4].failed);
  CHECK(result.transcripts[4].error.find("injected failure") != std::string::npos);
  CHECK(result.summary.total_backend_calls == 9 * 3);  // failed call throws before counting
}

TEST_CASE("concurrency does not change results with a deterministic mock") {
  SynthFixture fx(12);
  ProbabilisticBackend prob(paper_model(), 77);
  PromptEngine prompts;
  RunConfig base;
  base.retry_on_unparseable = false;

  RunConfig c1 = base, c8 = base;
  c1.max_concurrent_samples = 1;
  c8.max_concurrent_samples = 8;
  auto r1 = run_dataset(fx.samples, c1, prob, prompts);
  auto r8 = run_dataset(fx.samples, c8, prob, prompts);
  CHECK(serialize_results(r1.transcripts) == serialize_results(r8.transcripts));
}

TEST_CASE("results JSONL round trip") {
  SynthFixture fx(4);
  EchoGoldBackend echo(fx.samples);
  PromptEngine prompts;
  RunConfig config;
  auto result = run_dataset(fx.samples, config, echo, prompts);
  auto text = serialize_results(result.transcripts);
  auto parsed = parse_results(text);
  CHECK(serialize_results(parsed) == text);
}
