#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motor/labels.hpp"

namespace motor {

struct ClipSample {
  std::string clip_id;
  std::string frames_dir;
  std::string transcript;  // UTF-8, may be empty
  double duration_s = 0.0;
  std::optional<int> group_size;  // 2..4 when known
  std::optional<MentalStateTriplet> gold;
};

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One JSON object per nonempty line; order preserved. Throws ManifestError
// naming the offending line on malformed input or duplicate clip_id.
std::vector<ClipSample> parse_manifest(const std::string& bytes);
std::vector<ClipSample> load_manifest(const std::string& path);

std::string manifest_line(const ClipSample& s);  // canonical JSONL form
std::string serialize_manifest(const std::vector<ClipSample>& samples);

}  // namespace motor
