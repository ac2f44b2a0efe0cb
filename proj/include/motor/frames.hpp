#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "motor/manifest.hpp"

namespace motor {

struct FramePlan {
  std::string clip_id;
  std::vector<int> selected_indices;  // nondecreasing, length k
  int target_side_px = 448;
};

struct FrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrameWarning {
  std::string clip_id;
  int index = 0;
  std::string message;
};

struct ValidatedFrames {
  std::vector<std::string> paths;  // one per selected index, in order
  std::vector<FrameWarning> warnings;
};

// Endpoint-inclusive uniform selection: index_i = floor(i*(N-1)/(k-1)).
// Clips shorter than k repeat the final frame to keep request shape constant.
std::vector<int> select_frame_indices(int n_total, int k);

// Counts contiguous frame_<i>.<ext> files starting at index 0.
int count_frames(const std::string& frames_dir);

FramePlan make_frame_plan(const ClipSample& sample, int frames_per_clip,
                          int target_side_px);

// Resolves selected files, warning on any frame whose dimensions differ
// from target_side_px square. Missing file -> FrameError with clip and index.
ValidatedFrames validate_frames(const ClipSample& sample, const FramePlan& plan);

}  // namespace motor
