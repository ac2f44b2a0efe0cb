#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "motor/extract.hpp"

using namespace motor;

TEST_CASE("answer line beats mentions") {
  auto e = extract(Stage::Cognition, "I first mention C_Positive...\nAnswer: C_Negative");
  CHECK(e.method == ExtractionMethod::AnswerLine);
  CHECK(as_cognition(e) == CognitionLabel::Negative);
}

TEST_CASE("last mention wins among mentions") {
  auto e = extract(Stage::Behavior, "They are monitoring, not controlling the task");
  CHECK(e.method == ExtractionMethod::LastMention);
  CHECK(as_behavior(e) == BehaviorLabel::Controlling);
}

TEST_CASE("no label yields Unparsed with method None") {
  auto e = extract(Stage::Emotion, "The group continues working.");
  CHECK(e.unparsed());
  CHECK(e.method == ExtractionMethod::None);
  CHECK_FALSE(e.matched_span.has_value());
}

TEST_CASE("stage scoping rejects wrong-stage labels") {
  CHECK(extract(Stage::Behavior, "This looks like C_Positive honestly").unparsed());
  CHECK(extract(Stage::Cognition, "E_Negative vibes").unparsed());
  CHECK(extract(Stage::Emotion, "They keep Monitoring the task").unparsed());
}

TEST_CASE("rendered labels round-trip through Answer lines") {
  for (auto b : kBehaviorLabels)
    CHECK(as_behavior(extract(Stage::Behavior, "Answer: " + render_label(b))) == b);
  for (auto c : kCognitionLabels)
    CHECK(as_cognition(extract(Stage::Cognition, "Answer: " + render_label(c))) == c);
  for (auto e : kEmotionLabels)
    CHECK(as_emotion(extract(Stage::Emotion, "Answer: " + render_label(e))) == e);
}

TEST_CASE("matching is case-insensitive for bare and prefixed forms") {
  CHECK(as_cognition(extract(Stage::Cognition, "answer: c_mixed")) == CognitionLabel::Mixed);
  CHECK(as_cognition(extract(Stage::Cognition, "ANSWER: MIXED")) == CognitionLabel::Mixed);
  CHECK(as_emotion(extract(Stage::Emotion, "clearly POSITIVE overall")) ==
        EmotionLabel::Positive);
}

TEST_CASE("determinism") {
  const std::string text = "Maybe Mixed. Maybe C_Neutral. Answer: C_Mixed";
  auto a = extract(Stage::Cognition, text);
  auto b = extract(Stage::Cognition, text);
  CHECK(a.label_index == b.label_index);
  CHECK(a.matched_span == b.matched_span);
  CHECK(a.method == b.method);
}

TEST_CASE("combined extraction parses the three answer lines") {
  auto all = extract_combined("Behavior: Monitoring\nCognition: C_Negative\nEmotion: E_Neutral");
  CHECK(as_behavior(all.behavior) == BehaviorLabel::Monitoring);
  CHECK(as_cognition(all.cognition) == CognitionLabel::Negative);
  CHECK(as_emotion(all.emotion) == EmotionLabel::Neutral);
}

TEST_CASE("combined extraction isolates partial failure") {
  auto all = extract_combined("Behavior: Mixed\nCognition: C_Positive\nno emotion line");
  CHECK(as_behavior(all.behavior) == BehaviorLabel::Mixed);
  CHECK(as_cognition(all.cognition) == CognitionLabel::Positive);
  CHECK(all.emotion.unparsed());
}

TEST_CASE("combined extraction is line-keyed, not position-keyed") {
  auto all = extract_combined("Emotion: E_Mixed\nBehavior: Controlling\nCognition: C_Neutral");
  CHECK(as_behavior(all.behavior) == BehaviorLabel::Controlling);
  CHECK(as_cognition(all.cognition) == CognitionLabel::Neutral);
  CHECK(as_emotion(all.emotion) == EmotionLabel::Mixed);
}

TEST_CASE("shipped extraction corpus passes in full") {
  std::ifstream in(std::string(MOTOR_TESTDATA_DIR) + "/extraction_corpus.jsonl");
  REQUIRE(in.good());
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    std::string stage_str = j.at("stage").get<std::string>();
    Stage stage = stage_str == "Behavior"    ? Stage::Behavior
                  : stage_str == "Cognition" ? Stage::Cognition
                                             : Stage::Emotion;
    auto e = extract(stage, j.at("text").get<std::string>());
    std::string got = "Unparsed";
    if (!e.unparsed()) {
      switch (stage) {
        case Stage::Behavior: got = render_label(*as_behavior(e)); break;
        case Stage::Cognition: got = render_label(*as_cognition(e)); break;
        default: got = render_label(*as_emotion(e)); break;
      }
    }
    INFO("corpus text: ", j.at("text").get<std::string>());
    CHECK(got == j.at("expected").get<std::string>());
    ++cases;
  }
  CHECK(cases >= 20);
}
