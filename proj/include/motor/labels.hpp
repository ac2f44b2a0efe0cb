#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace motor {

enum class BehaviorLabel { Monitoring, Controlling, Mixed };
enum class CognitionLabel { Positive, Negative, Mixed, Neutral };
enum class EmotionLabel { Positive, Negative, Mixed, Neutral };

enum class Stage { Behavior, Cognition, Emotion, Combined };

constexpr std::array<BehaviorLabel, 3> kBehaviorLabels = {
    BehaviorLabel::Monitoring, BehaviorLabel::Controlling, BehaviorLabel::Mixed};
constexpr std::array<CognitionLabel, 4> kCognitionLabels = {
    CognitionLabel::Positive, CognitionLabel::Negative, CognitionLabel::Mixed,
    CognitionLabel::Neutral};
constexpr std::array<EmotionLabel, 4> kEmotionLabels = {
    EmotionLabel::Positive, EmotionLabel::Negative, EmotionLabel::Mixed,
    EmotionLabel::Neutral};

// Canonical rendered forms: behavior bare, cognition/emotion prefixed (C_/E_).
std::string render_label(BehaviorLabel b);
std::string render_label(CognitionLabel c);
std::string render_label(EmotionLabel e);

std::optional<BehaviorLabel> parse_behavior(std::string_view s);
std::optional<CognitionLabel> parse_cognition(std::string_view s);
std::optional<EmotionLabel> parse_emotion(std::string_view s);

std::string stage_name(Stage s);

struct MentalStateTriplet {
  BehaviorLabel behavior;
  CognitionLabel cognition;
  EmotionLabel emotion;

  bool operator==(const MentalStateTriplet&) const = default;
};

// All 48 triplets, B-major then C then E. Duplicate-free by construction.
std::vector<MentalStateTriplet> enumerate_triplets();

}  // namespace motor
