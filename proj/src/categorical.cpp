#include "motor/categorical.hpp"

#include <cmath>

#include <json.hpp>

namespace motor {

using nlohmann::json;

namespace {

void check_row(const double* row, size_t n, const std::string& name, double tol) {
  double sum = 0;
  for (size_t i = 0; i < n; ++i) {
    if (row[i] < 0) throw DistributionError(name + ": negative entry");
    sum += row[i];
  }
  if (std::abs(sum - 1.0) > tol)
    throw DistributionError(name + ": row sums to " + std::to_string(sum));
}

}  // namespace

void CategoricalModel::validate(double tol) const {
  check_row(p_behavior.data(), 3, "p_behavior", tol);
  for (size_t b = 0; b < 3; ++b)
    check_row(p_cognition_given_behavior[b].data(), 4,
              "p_cognition_given_behavior[" + std::to_string(b) + "]", tol);
  for (size_t bc = 0; bc < 12; ++bc)
    check_row(p_emotion_given_behavior_cognition[bc].data(), 4,
              "p_emotion_given_behavior_cognition[" + std::to_string(bc) + "]", tol);
}

Marginals marginalize(const CategoricalModel& model) {
  model.validate();
  Marginals m;
  m.behavior = model.p_behavior;
  for (size_t b = 0; b < 3; ++b)
    for (size_t c = 0; c < 4; ++c)
      m.cognition[c] += model.p_cognition_given_behavior[b][c] * model.p_behavior[b];
  for (size_t b = 0; b < 3; ++b)
    for (size_t c = 0; c < 4; ++c) {
      for (size_t e = 0; e < 4; ++e)
        m.emotion[e] += model.p_emotion_given_behavior_cognition[b * 4 + c][e] *
                        model.p_cognition_given_behavior[b][c] * model.p_behavior[b];
    }
  return m;
}

CategoricalModel paper_model() {
  CategoricalModel m;
  // Behavior marginal: Monitoring published at 0.562; the Controlling/Mixed
  // split is chosen so the implied cognition-Neutral marginal lands on the
  // published 0.478.
  m.p_behavior = {0.562, 0.155, 0.283};

  // Cognition rows in (Positive, Negative, Mixed, Neutral) order.
  m.p_cognition_given_behavior[0] = {0.252, 0.270, 0.094, 0.384};  // Monitoring
  m.p_cognition_given_behavior[1] = {0.003, 0.003, 0.003, 0.991};  // Controlling
  m.p_cognition_given_behavior[2] = m.p_cognition_given_behavior[0];  // Mixed: assumed copy

  // Emotion given (B, C): 0.70 on the valence-matching emotion, rest uniform.
  for (size_t b = 0; b < 3; ++b)
    for (size_t c = 0; c < 4; ++c) {
      auto& row = m.p_emotion_given_behavior_cognition[b * 4 + c];
      row = {0.10, 0.10, 0.10, 0.10};
      row[c] = 0.70;
    }
  m.validate();
  return m;
}

std::string categorical_model_json(const CategoricalModel& model) {
  json j;
  j["behavior_labels"] = json::array();
  for (auto b : kBehaviorLabels) j["behavior_labels"].push_back(render_label(b));
  j["cognition_labels"] = json::array();
  for (auto c : kCognitionLabels) j["cognition_labels"].push_back(render_label(c));
  j["emotion_labels"] = json::array();
  for (auto e : kEmotionLabels) j["emotion_labels"].push_back(render_label(e));
  j["p_behavior"] = model.p_behavior;
  j["p_cognition_given_behavior"] = model.p_cognition_given_behavior;
  json emo = json::object();
  for (size_t b = 0; b < 3; ++b)
    for (size_t c = 0; c < 4; ++c) {
      std::string key = render_label(kBehaviorLabels[b]) + "," + render_label(kCognitionLabels[c]);
      emo[key] = model.p_emotion_given_behavior_cognition[b * 4 + c];
    }
  j["p_emotion_given_behavior_cognition"] = emo;
  return j.dump(2);
}

CategoricalModel categorical_model_from_json(const std::string& text) {
  json j = json::parse(text);
  CategoricalModel m;
  m.p_behavior = j.at("p_behavior").get<std::array<double, 3>>();
  m.p_cognition_given_behavior =
      j.at("p_cognition_given_behavior").get<std::array<std::array<double, 4>, 3>>();
  const auto& emo = j.at("p_emotion_given_behavior_cognition");
  for (size_t b = 0; b < 3; ++b)
    for (size_t c = 0; c < 4; ++c) {
      std::string key = render_label(kBehaviorLabels[b]) + "," + render_label(kCognitionLabels[c]);
      m.p_emotion_given_behavior_cognition[b * 4 + c] =
          emo.at(key).get<std::array<double, 4>>();
    }
  m.validate();
  return m;
}

}  // namespace motor
