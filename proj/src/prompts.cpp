#include "motor/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace motor {

namespace {

constexpr const char* kNoSpeechMarker = "[no speech]";

const char* kSrlBehaviorDef =
    "Monitoring refers to interactions that increase awareness of the group's "
    "current state, including task understanding, progress, and ongoing "
    "emotional and motivational conditions. Controlling refers to attempts to "
    "influence or regulate these states. Episodes that contain inseparable "
    "elements of both are labeled Mixed.";

const char* kSrlBehaviorFocus =
    "Judge the directional intent of the interaction rather than "
    "surface-level linguistic features.";

const char* kSrlCognitionDef =
    "Cognition here means the valence of the learner's metacognitive "
    "evaluation of the ongoing task: whether the group expresses a positive, "
    "negative, mixed, or absent evaluation of how the task is going.";

const char* kSrlEmotionDef =
    "Collaborative schoolwork is task-oriented, so assume the expressed "
    "emotion is neutral by default and override that default only when "
    "explicit emotional markers are present in the transcript or the frames.";

const char* kBehaviorSrl = R"(You observe a short clip of secondary-school students collaborating on a science task. You are given sampled video frames and the transcript.

{srl_behavior_def}
{srl_behavior_focus}

Transcript:
{transcript}

Classify the group's behavior in this clip. Choose exactly one label from: {label_menu}.
Explain briefly, then end your reply with a final line of the form:
Answer: <label>
)";

const char* kBehaviorGeneric = R"(You are given sampled video frames and a transcript from a short clip of a student group.

Transcript:
{transcript}

Classify the behavior in this clip. Choose exactly one label from: {label_menu}.
Explain briefly, then end your reply with a final line of the form:
Answer: <label>
)";

const char* kCognitionSrl = R"(You observe a short clip of secondary-school students collaborating on a science task. You are given sampled video frames and the transcript.

The group's behavior in this clip was classified as: {behavior}

{srl_cognition_def}
Use the behavior classification above as an anchor when interpreting the evidence.

Transcript:
{transcript}

Classify the group's cognition in this clip. Choose exactly one label from: {label_menu}.
Explain briefly, then end your reply with a final line of the form:
Answer: <label>
)";

const char* kCognitionGeneric = R"(You are given sampled video frames and a transcript from a short clip of a student group.

The group's behavior in this clip was classified as: {behavior}

Transcript:
{transcript}

Classify the cognition in this clip. Choose exactly one label from: {label_menu}.
Explain briefly, then end your reply with a final line of the form:
Answer: <label>
)";

const char* kEmotionSrl = R"(You observe a short clip of secondary-school students collaborating on a science task. You are given sampled video frames and the transcript.

The group's behavior in this clip was classified as: {behavior}
The group's cognition in this clip was classified as: {cognition}

{srl_emotion_def}
Consider both classifications above when weighing the evidence.

Transcript:
{transcript}

Classify the group's expressed emotion in this clip. Choose exactly one label from: {label_menu}.
Explain briefly, then end your reply with a final line of the form:
Answer: <label>
)";

const char* kEmotionGeneric = R"(You are given sampled video frames and a transcript from a short clip of a student group.

The group's behavior in this clip was classified as: {behavior}
The group's cognition in this clip was classified as: {cognition}

Transcript:
{transcript}

Classify the emotion in this clip. Choose exactly one label from: {label_menu}.
Explain briefly, then end your reply with a final line of the form:
Answer: <label>
)";

const char* kCombinedSrl = R"(You observe a short clip of secondary-school students collaborating on a science task. You are given sampled video frames and the transcript.

{srl_behavior_def}
{srl_behavior_focus}
{srl_cognition_def}
{srl_emotion_def}

Transcript:
{transcript}

Reason in order: first behavior, then cognition given the behavior, then emotion given both. Pick one label per dimension.
{label_menu}
End your reply with exactly three final lines of the form:
Behavior: <label>
Cognition: <label>
Emotion: <label>
)";

const char* kCombinedGeneric = R"(You are given sampled video frames and a transcript from a short clip of a student group.

Transcript:
{transcript}

Classify, in order, the behavior, then the cognition, then the emotion. Pick one label per dimension.
{label_menu}
End your reply with exactly three final lines of the form:
Behavior: <label>
Cognition: <label>
Emotion: <label>
)";

void replace_all(std::string& text, const std::string& from, const std::string& to) {
  size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string template_filename(Stage stage, PromptFlavor flavor) {
  std::string name = stage_name(stage);
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return name + "_" + (flavor == PromptFlavor::SRL ? "srl" : "generic") + ".txt";
}

}  // namespace

std::string flavor_name(PromptFlavor f) {
  return f == PromptFlavor::SRL ? "srl" : "generic";
}

const std::vector<std::string>& srl_definition_sentences() {
  static const std::vector<std::string> sentences = {
      kSrlBehaviorDef, kSrlBehaviorFocus, kSrlCognitionDef, kSrlEmotionDef};
  return sentences;
}

std::string label_menu(Stage stage) {
  switch (stage) {
    case Stage::Behavior: return "Monitoring, Controlling, Mixed";
    case Stage::Cognition: return "C_Positive, C_Negative, C_Mixed, C_Neutral";
    case Stage::Emotion: return "E_Positive, E_Negative, E_Mixed, E_Neutral";
    case Stage::Combined:
      return "Behavior labels: Monitoring, Controlling, Mixed\n"
             "Cognition labels: C_Positive, C_Negative, C_Mixed, C_Neutral\n"
             "Emotion labels: E_Positive, E_Negative, E_Mixed, E_Neutral";
  }
  return {};
}

PromptEngine::PromptEngine() {
  templates_[{Stage::Behavior, PromptFlavor::SRL}] = kBehaviorSrl;
  templates_[{Stage::Behavior, PromptFlavor::Generic}] = kBehaviorGeneric;
  templates_[{Stage::Cognition, PromptFlavor::SRL}] = kCognitionSrl;
  templates_[{Stage::Cognition, PromptFlavor::Generic}] = kCognitionGeneric;
  templates_[{Stage::Emotion, PromptFlavor::SRL}] = kEmotionSrl;
  templates_[{Stage::Emotion, PromptFlavor::Generic}] = kEmotionGeneric;
  templates_[{Stage::Combined, PromptFlavor::SRL}] = kCombinedSrl;
  templates_[{Stage::Combined, PromptFlavor::Generic}] = kCombinedGeneric;
}

PromptEngine PromptEngine::from_directory(const std::string& dir) {
  PromptEngine engine;
  for (auto& [key, body] : engine.templates_) {
    fs::path p = fs::path(dir) / template_filename(key.first, key.second);
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("template missing: " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  return engine;
}

void PromptEngine::write_builtin_templates(const std::string& dir) {
  fs::create_directories(dir);
  PromptEngine engine;
  for (const auto& [key, body] : engine.templates_) {
    std::ofstream out(fs::path(dir) / template_filename(key.first, key.second),
                      std::ios::binary | std::ios::trunc);
    out << body;
  }
}

std::string PromptEngine::render(Stage stage, PromptFlavor flavor,
                                 const ClipSample& sample,
                                 const std::string& behavior,
                                 const std::string& cognition) const {
  std::string text = templates_.at({stage, flavor});
  replace_all(text, "{srl_behavior_def}", kSrlBehaviorDef);
  replace_all(text, "{srl_behavior_focus}", kSrlBehaviorFocus);
  replace_all(text, "{srl_cognition_def}", kSrlCognitionDef);
  replace_all(text, "{srl_emotion_def}", kSrlEmotionDef);
  replace_all(text, "{label_menu}", label_menu(stage));
  replace_all(text, "{behavior}", behavior);
  replace_all(text, "{cognition}", cognition);
  replace_all(text, "{transcript}",
              sample.transcript.empty() ? kNoSpeechMarker : sample.transcript);
  return text;
}

std::string PromptEngine::behavior_prompt(const ClipSample& sample,
                                          PromptFlavor flavor) const {
  return render(Stage::Behavior, flavor, sample, {}, {});
}

std::string PromptEngine::cognition_prompt(const ClipSample& sample,
                                           std::optional<BehaviorLabel> behavior,
                                           PromptFlavor flavor) const {
  return render(Stage::Cognition, flavor, sample,
                behavior ? render_label(*behavior) : "Unknown", {});
}

std::string PromptEngine::emotion_prompt(const ClipSample& sample,
                                         std::optional<BehaviorLabel> behavior,
                                         std::optional<CognitionLabel> cognition,
                                         PromptFlavor flavor) const {
  return render(Stage::Emotion, flavor, sample,
                behavior ? render_label(*behavior) : "Unknown",
                cognition ? render_label(*cognition) : "Unknown");
}

std::string PromptEngine::combined_prompt(const ClipSample& sample,
                                          PromptFlavor flavor) const {
  return render(Stage::Combined, flavor, sample, {}, {});
}

}  // namespace motor
