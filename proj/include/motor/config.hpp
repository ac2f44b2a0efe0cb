#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace motor {

enum class RunMode { FullMAS, SinglePass, NoSRL, TextOnly };

std::string run_mode_name(RunMode m);
std::optional<RunMode> parse_run_mode(const std::string& s);

// Defaults reproduce the evaluation protocol: 8 frames at 448px,
// greedy decoding (temperature 0), 1024-token generation cap.
struct RunConfig {
  RunMode mode = RunMode::FullMAS;
  int frames_per_clip = 8;
  int frame_side_px = 448;
  double temperature = 0.0;
  int max_new_tokens = 1024;
  int max_concurrent_samples = 4;
  bool retry_on_unparseable = true;
  std::int64_t seed = 0;

  // Backend calls per sample when every stage parses cleanly.
  int calls_per_sample() const { return mode == RunMode::SinglePass ? 1 : 3; }
};

std::string run_config_json(const RunConfig& c);
RunConfig run_config_from_json(const std::string& text);

}  // namespace motor
