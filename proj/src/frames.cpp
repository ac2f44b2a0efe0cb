#include "motor/frames.hpp"

#include <filesystem>

#include "motor/png_io.hpp"

namespace fs = std::filesystem;

namespace motor {

std::vector<int> select_frame_indices(int n_total, int k) {
  if (n_total < 1) throw FrameError("select_frame_indices: n_total must be >= 1");
  if (k < 1) throw FrameError("select_frame_indices: k must be >= 1");
  std::vector<int> out;
  out.reserve(static_cast<size_t>(k));
  if (k == 1) {
    out.push_back((n_total - 1) / 2);
    return out;
  }
  if (n_total >= k) {
    for (int i = 0; i < k; ++i)
      out.push_back(static_cast<int>(static_cast<long long>(i) * (n_total - 1) / (k - 1)));
    return out;
  }
  for (int i = 0; i < n_total; ++i) out.push_back(i);
  while (static_cast<int>(out.size()) < k) out.push_back(n_total - 1);
  return out;
}

namespace {

const char* kExts[] = {".png", ".jpg", ".jpeg"};

std::string frame_path(const std::string& dir, int index) {
  for (const char* ext : kExts) {
    fs::path p = fs::path(dir) / ("frame_" + std::to_string(index) + ext);
    if (fs::exists(p)) return p.string();
  }
  return {};
}

}  // namespace

int count_frames(const std::string& frames_dir) {
  int n = 0;
  while (!frame_path(frames_dir, n).empty()) ++n;
  return n;
}

FramePlan make_frame_plan(const ClipSample& sample, int frames_per_clip,
                          int target_side_px) {
  int n_total = count_frames(sample.frames_dir);
  if (n_total == 0)
    throw FrameError("clip " + sample.clip_id + ": no frames found in " + sample.frames_dir);
  return {sample.clip_id, select_frame_indices(n_total, frames_per_clip), target_side_px};
}

ValidatedFrames validate_frames(const ClipSample& sample, const FramePlan& plan) {
  ValidatedFrames out;
  for (int idx : plan.selected_indices) {
    std::string path = frame_path(sample.frames_dir, idx);
    if (path.empty())
      throw FrameError("clip " + sample.clip_id + ": frame index " +
                       std::to_string(idx) + " missing in " + sample.frames_dir);
    auto dims = read_png_dims(path);
    if (dims) {
      auto side = static_cast<std::uint32_t>(plan.target_side_px);
      if (dims->width != side || dims->height != side)
        out.warnings.push_back({sample.clip_id, idx,
                                "frame " + std::to_string(idx) + " is " +
                                    std::to_string(dims->width) + "x" +
                                    std::to_string(dims->height) + ", expected " +
                                    std::to_string(side) + " square"});
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace motor
