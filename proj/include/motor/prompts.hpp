#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motor/labels.hpp"
#include "motor/manifest.hpp"

namespace motor {

enum class PromptFlavor { SRL, Generic };

std::string flavor_name(PromptFlavor f);

// The fixed SRL role-definition sentences injected only into SRL-flavored
// prompts. Generic prompts must contain none of them.
const std::vector<std::string>& srl_definition_sentences();

std::string label_menu(Stage stage);

// Stage prompt builder over versioned text templates with placeholders
// {transcript}, {behavior}, {cognition}, {label_menu}. An extraction failure
// upstream substitutes the token "Unknown".
class PromptEngine {
 public:
  PromptEngine();  // built-in templates
  static PromptEngine from_directory(const std::string& dir);

  // Writes the built-in templates as <stage>_<flavor>.txt files.
  static void write_builtin_templates(const std::string& dir);

  std::string behavior_prompt(const ClipSample& sample, PromptFlavor flavor) const;
  std::string cognition_prompt(const ClipSample& sample,
                               std::optional<BehaviorLabel> behavior,
                               PromptFlavor flavor) const;
  std::string emotion_prompt(const ClipSample& sample,
                             std::optional<BehaviorLabel> behavior,
                             std::optional<CognitionLabel> cognition,
                             PromptFlavor flavor) const;
  std::string combined_prompt(const ClipSample& sample, PromptFlavor flavor) const;

 private:
  std::map<std::pair<Stage, PromptFlavor>, std::string> templates_;
  std::string render(Stage stage, PromptFlavor flavor, const ClipSample& sample,
                     const std::string& behavior, const std::string& cognition) const;
};

}  // namespace motor
