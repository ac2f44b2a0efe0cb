#include "motor/labels.hpp"

namespace motor {

std::string render_label(BehaviorLabel b) {
  switch (b) {
    case BehaviorLabel::Monitoring: return "Monitoring";
    case BehaviorLabel::Controlling: return "Controlling";
    case BehaviorLabel::Mixed: return "Mixed";
  }
  return "?";
}

std::string render_label(CognitionLabel c) {
  switch (c) {
    case CognitionLabel::Positive: return "C_Positive";
    case CognitionLabel::Negative: return "C_Negative";
    case CognitionLabel::Mixed: return "C_Mixed";
    case CognitionLabel::Neutral: return "C_Neutral";
  }
  return "?";
}

std::string render_label(EmotionLabel e) {
  switch (e) {
    case EmotionLabel::Positive: return "E_Positive";
    case EmotionLabel::Negative: return "E_Negative";
    case EmotionLabel::Mixed: return "E_Mixed";
    case EmotionLabel::Neutral: return "E_Neutral";
  }
  return "?";
}

std::optional<BehaviorLabel> parse_behavior(std::string_view s) {
  for (auto b : kBehaviorLabels)
    if (s == render_label(b)) return b;
  return std::nullopt;
}

std::optional<CognitionLabel> parse_cognition(std::string_view s) {
  for (auto c : kCognitionLabels)
    if (s == render_label(c)) return c;
  return std::nullopt;
}

std::optional<EmotionLabel> parse_emotion(std::string_view s) {
  for (auto e : kEmotionLabels)
    if (s == render_label(e)) return e;
  return std::nullopt;
}

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Behavior: return "Behavior";
    case Stage::Cognition: return "Cognition";
    case Stage::Emotion: return "Emotion";
    case Stage::Combined: return "Combined";
  }
  return "?";
}

std::vector<MentalStateTriplet> enumerate_triplets() {
  std::vector<MentalStateTriplet> out;
  out.reserve(48);
  for (auto b : kBehaviorLabels)
    for (auto c : kCognitionLabels)
      for (auto e : kEmotionLabels) out.push_back({b, c, e});
  return out;
}

}  // namespace motor
