#include "motor/synthgen.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "motor/png_io.hpp"
#include "motor/rng.hpp"

namespace fs = std::filesystem;

namespace motor {

std::string phrase_for(BehaviorLabel b) {
  switch (b) {
    case BehaviorLabel::Monitoring: return "Are we on the right track with this step?";
    case BehaviorLabel::Controlling: return "Let's change the setup and measure it again.";
    case BehaviorLabel::Mixed:
      return "We are behind, so let's check the values and then redo the mixing.";
  }
  return {};
}

std::string phrase_for(CognitionLabel c) {
  switch (c) {
    case CognitionLabel::Positive: return "I think we really understand this part now.";
    case CognitionLabel::Negative: return "This is not making sense to us at all.";
    case CognitionLabel::Mixed: return "Part of this works but the rest is confusing.";
    case CognitionLabel::Neutral: return "We read the next instruction and fill in the table.";
  }
  return {};
}

std::string phrase_for(EmotionLabel e) {
  switch (e) {
    case EmotionLabel::Positive: return "This is actually fun!";
    case EmotionLabel::Negative: return "Ugh, this keeps going wrong.";
    case EmotionLabel::Mixed: return "Interesting, but also a bit worrying.";
    case EmotionLabel::Neutral: return "Okay. Next step.";
  }
  return {};
}

std::vector<ClipSample> generate(const GeneratorSpec& spec, const std::string& frames_root) {
  if (spec.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  spec.model.validate();
  auto useed = static_cast<std::uint64_t>(spec.seed);

  std::vector<ClipSample> out;
  out.reserve(static_cast<size_t>(spec.n_samples));
  for (int i = 0; i < spec.n_samples; ++i) {
    auto idx = static_cast<std::uint64_t>(i);
    char id[32];
    std::snprintf(id, sizeof id, "synth_%06d", i);

    int b = rng::sample_index(spec.model.p_behavior,
                              rng::uniform01(rng::hash_key(useed, idx, "B")));
    int c = rng::sample_index(spec.model.p_cognition_given_behavior[static_cast<size_t>(b)],
                              rng::uniform01(rng::hash_key(useed, idx, "C")));
    int e = rng::sample_index(
        spec.model.p_emotion_given_behavior_cognition[static_cast<size_t>(b) * 4 +
                                                      static_cast<size_t>(c)],
        rng::uniform01(rng::hash_key(useed, idx, "E")));
    MentalStateTriplet gold{kBehaviorLabels[static_cast<size_t>(b)],
                            kCognitionLabels[static_cast<size_t>(c)],
                            kEmotionLabels[static_cast<size_t>(e)]};

    ClipSample s;
    s.clip_id = id;
    s.frames_dir = frames_root + "/" + s.clip_id;
    if (spec.transcript_style == TranscriptStyle::KeywordBearing) {
      s.transcript = phrase_for(gold.behavior) + " " + phrase_for(gold.cognition) + " " +
                     phrase_for(gold.emotion);
    } else {
      s.transcript = "The group continues working on the experiment.";
    }
    // duration centered near the dataset's ~6.1 s clip length
    s.duration_s = 4.0 + 4.0 * rng::uniform01(rng::hash_key(useed, idx, "dur"));
    s.group_size = 2 + static_cast<int>(rng::uniform01(rng::hash_key(useed, idx, "grp")) * 3);
    s.gold = gold;
    out.push_back(std::move(s));
  }
  return out;
}

void write_frames(const std::vector<ClipSample>& samples, int side_px, int frames_per_clip) {
  for (const auto& s : samples) {
    std::error_code ec;
    fs::create_directories(s.frames_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + s.frames_dir + ": " + ec.message());
    std::uint64_t h = rng::hash_key(0, s.clip_id, "color");
    auto r = static_cast<std::uint8_t>(h);
    auto g = static_cast<std::uint8_t>(h >> 8);
    auto b = static_cast<std::uint8_t>(h >> 16);
    for (int i = 0; i < frames_per_clip; ++i)
      write_solid_png(s.frames_dir + "/frame_" + std::to_string(i) + ".png", side_px, r, g, b);
  }
}

}  // namespace motor
