#include "motor/extract.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace motor {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string lowered(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct LabelForm {
  std::string text;  // lowercase
  int label_index;
};

// Bare and prefixed accepted forms for a stage, lowercase.
std::vector<LabelForm> stage_forms(Stage stage) {
  std::vector<LabelForm> forms;
  switch (stage) {
    case Stage::Behavior:
      for (int i = 0; i < 3; ++i)
        forms.push_back({lowered(render_label(kBehaviorLabels[static_cast<size_t>(i)])), i});
      break;
    case Stage::Cognition:
      for (int i = 0; i < 4; ++i) {
        std::string canon = lowered(render_label(kCognitionLabels[static_cast<size_t>(i)]));
        forms.push_back({canon, i});
        forms.push_back({canon.substr(2), i});  // strip "c_"
      }
      break;
    case Stage::Emotion:
      for (int i = 0; i < 4; ++i) {
        std::string canon = lowered(render_label(kEmotionLabels[static_cast<size_t>(i)]));
        forms.push_back({canon, i});
        forms.push_back({canon.substr(2), i});
      }
      break;
    case Stage::Combined:
      break;
  }
  return forms;
}

bool boundary_at(const std::string& text, size_t pos, size_t len) {
  if (pos > 0 && is_word_char(text[pos - 1])) return false;
  if (pos + len < text.size() && is_word_char(text[pos + len])) return false;
  return true;
}

// Whole-word label at exactly `pos`; longest form wins (prefixed over bare).
std::optional<std::pair<int, size_t>> match_label_at(
    const std::vector<LabelForm>& forms, const std::string& lower_text, size_t pos) {
  std::optional<std::pair<int, size_t>> best;
  for (const auto& f : forms) {
    if (lower_text.compare(pos, f.text.size(), f.text) == 0 &&
        boundary_at(lower_text, pos, f.text.size())) {
      if (!best || f.text.size() > best->second) best = {f.label_index, f.text.size()};
    }
  }
  return best;
}

// Last answer line "<key>: <label>"; returns extraction on success.
Extraction find_answer_line(const std::string& key_lower, Stage stage,
                            const std::string& text, const std::string& lower_text) {
  (void)text;
  auto forms = stage_forms(stage);
  Extraction result;
  size_t line_start = 0;
  while (line_start <= lower_text.size()) {
    size_t line_end = lower_text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = lower_text.size();
    size_t p = line_start;
    auto skip_junk = [&] {
      while (p < line_end && (std::isspace(static_cast<unsigned char>(lower_text[p])) ||
                              lower_text[p] == '*' || lower_text[p] == '#' ||
                              lower_text[p] == '-' || lower_text[p] == '>'))
        ++p;
    };
    skip_junk();
    if (lower_text.compare(p, key_lower.size(), key_lower) == 0) {
      p += key_lower.size();
      while (p < line_end && std::isspace(static_cast<unsigned char>(lower_text[p]))) ++p;
      if (p < line_end && lower_text[p] == ':') {
        ++p;
        while (p < line_end && (std::isspace(static_cast<unsigned char>(lower_text[p])) ||
                                lower_text[p] == '*'))
          ++p;
        if (auto m = match_label_at(forms, lower_text, p)) {
          result.label_index = m->first;
          result.matched_span = {p, p + m->second};
          result.method = ExtractionMethod::AnswerLine;
          // keep scanning; a later answer line overrides
        }
      }
    }
    if (line_end == lower_text.size()) break;
    line_start = line_end + 1;
  }
  return result;
}

Extraction find_last_mention(Stage stage, const std::string& lower_text) {
  auto forms = stage_forms(stage);
  Extraction result;
  size_t best_pos = 0;
  size_t best_len = 0;
  bool found = false;
  for (const auto& f : forms) {
    size_t pos = 0;
    while ((pos = lower_text.find(f.text, pos)) != std::string::npos) {
      if (boundary_at(lower_text, pos, f.text.size())) {
        if (!found || pos > best_pos || (pos == best_pos && f.text.size() > best_len)) {
          found = true;
          best_pos = pos;
          best_len = f.text.size();
          result.label_index = f.label_index;
        }
      }
      ++pos;
    }
  }
  if (found) {
    result.matched_span = {best_pos, best_pos + best_len};
    result.method = ExtractionMethod::LastMention;
  }
  return result;
}

}  // namespace

std::optional<BehaviorLabel> as_behavior(const Extraction& e) {
  if (!e.label_index) return std::nullopt;
  return kBehaviorLabels[static_cast<size_t>(*e.label_index)];
}

std::optional<CognitionLabel> as_cognition(const Extraction& e) {
  if (!e.label_index) return std::nullopt;
  return kCognitionLabels[static_cast<size_t>(*e.label_index)];
}

std::optional<EmotionLabel> as_emotion(const Extraction& e) {
  if (!e.label_index) return std::nullopt;
  return kEmotionLabels[static_cast<size_t>(*e.label_index)];
}

Extraction extract(Stage stage, const std::string& text) {
  std::string lower_text = lowered(text);
  Extraction answer = find_answer_line("answer", stage, text, lower_text);
  if (!answer.unparsed()) return answer;
  return find_last_mention(stage, lower_text);
}

CombinedExtraction extract_combined(const std::string& text) {
  std::string lower_text = lowered(text);
  CombinedExtraction out;
  out.behavior = find_answer_line("behavior", Stage::Behavior, text, lower_text);
  out.cognition = find_answer_line("cognition", Stage::Cognition, text, lower_text);
  out.emotion = find_answer_line("emotion", Stage::Emotion, text, lower_text);
  return out;
}

}  // namespace motor
