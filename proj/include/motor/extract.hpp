#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "motor/labels.hpp"

namespace motor {

enum class ExtractionMethod { AnswerLine, LastMention, None };

// Stage-scoped extraction result. label_index indexes that stage's label
// array; nullopt means Unparsed (method == None).
struct Extraction {
  std::optional<int> label_index;
  std::optional<std::pair<size_t, size_t>> matched_span;  // [begin, end)
  ExtractionMethod method = ExtractionMethod::None;

  bool unparsed() const { return !label_index.has_value(); }
};

std::optional<BehaviorLabel> as_behavior(const Extraction& e);
std::optional<CognitionLabel> as_cognition(const Extraction& e);
std::optional<EmotionLabel> as_emotion(const Extraction& e);

// Answer-line match wins; otherwise the last whole-word mention of any label
// in the stage's space (bare or prefixed, case-insensitive); otherwise
// Unparsed. Failure is a value, never an error.
Extraction extract(Stage stage, const std::string& text);

struct CombinedExtraction {
  Extraction behavior;
  Extraction cognition;
  Extraction emotion;
};

// Parses the three "Behavior:/Cognition:/Emotion:" answer lines
// independently; lines may appear in any order.
CombinedExtraction extract_combined(const std::string& text);

}  // namespace motor
