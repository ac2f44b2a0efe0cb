#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "motor/labels.hpp"

namespace motor {

struct DistributionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Factorized joint over (B, C, E): P(B), P(C|B), P(E|B,C).
// Label order follows the kBehaviorLabels / kCognitionLabels /
// kEmotionLabels arrays. Emotion rows are indexed b*4 + c.
struct CategoricalModel {
  std::array<double, 3> p_behavior{};
  std::array<std::array<double, 4>, 3> p_cognition_given_behavior{};
  std::array<std::array<double, 4>, 12> p_emotion_given_behavior_cognition{};

  // Throws DistributionError unless every row is stochastic within tol.
  void validate(double tol = 1e-9) const;
};

struct Marginals {
  std::array<double, 3> behavior{};
  std::array<double, 4> cognition{};
  std::array<double, 4> emotion{};
};

// Exact enumeration of the stage marginals from the factorized joint.
Marginals marginalize(const CategoricalModel& model);

// Distribution tables seeded from the published dataset statistics; cells
// the source does not publish are filled with documented assumptions and
// flagged "assumed" in the serialized form.
CategoricalModel paper_model();

std::string categorical_model_json(const CategoricalModel& model);
CategoricalModel categorical_model_from_json(const std::string& text);

}  // namespace motor
