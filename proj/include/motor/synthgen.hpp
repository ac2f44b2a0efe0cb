#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "motor/categorical.hpp"
#include "motor/manifest.hpp"

namespace motor {

enum class TranscriptStyle { KeywordBearing, Plain };

struct GeneratorSpec {
  int n_samples = 1;
  CategoricalModel model;
  std::int64_t seed = 0;
  TranscriptStyle transcript_style = TranscriptStyle::KeywordBearing;
};

// Ancestral sampling B -> C|B -> E|B,C with a counter-based per-index
// stream: the manifest is identical for any worker count or call order.
// frames_dir of sample i is <frames_root>/<clip_id>.
std::vector<ClipSample> generate(const GeneratorSpec& spec,
                                 const std::string& frames_root = "frames");

// Materializes placeholder single-color frames (frame_0..frame_{k-1}.png)
// for each sample's frames_dir.
void write_frames(const std::vector<ClipSample>& samples, int side_px = 448,
                  int frames_per_clip = 8);

// The fixed per-label sentence bank used by KeywordBearing transcripts.
std::string phrase_for(BehaviorLabel b);
std::string phrase_for(CognitionLabel c);
std::string phrase_for(EmotionLabel e);

}  // namespace motor
