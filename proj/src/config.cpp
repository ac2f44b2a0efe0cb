#include "motor/config.hpp"

#include <stdexcept>

#include <json.hpp>

namespace motor {

using nlohmann::json;

std::string run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::FullMAS: return "full";
    case RunMode::SinglePass: return "single";
    case RunMode::NoSRL: return "no-srl";
    case RunMode::TextOnly: return "text-only";
  }
  return "?";
}

std::optional<RunMode> parse_run_mode(const std::string& s) {
  if (s == "full") return RunMode::FullMAS;
  if (s == "single") return RunMode::SinglePass;
  if (s == "no-srl") return RunMode::NoSRL;
  if (s == "text-only") return RunMode::TextOnly;
  return std::nullopt;
}

std::string run_config_json(const RunConfig& c) {
  json j = {{"mode", run_mode_name(c.mode)},
            {"frames_per_clip", c.frames_per_clip},
            {"frame_side_px", c.frame_side_px},
            {"temperature", c.temperature},
            {"max_new_tokens", c.max_new_tokens},
            {"max_concurrent_samples", c.max_concurrent_samples},
            {"retry_on_unparseable", c.retry_on_unparseable},
            {"seed", c.seed}};
  return j.dump(2);
}

RunConfig run_config_from_json(const std::string& text) {
  json j = json::parse(text);
  RunConfig c;
  if (j.contains("mode")) {
    auto m = parse_run_mode(j["mode"].get<std::string>());
    if (!m) throw std::runtime_error("unknown mode '" + j["mode"].get<std::string>() + "'");
    c.mode = *m;
  }
  if (j.contains("frames_per_clip")) c.frames_per_clip = j["frames_per_clip"].get<int>();
  if (j.contains("frame_side_px")) c.frame_side_px = j["frame_side_px"].get<int>();
  if (j.contains("temperature")) c.temperature = j["temperature"].get<double>();
  if (j.contains("max_new_tokens")) c.max_new_tokens = j["max_new_tokens"].get<int>();
  if (j.contains("max_concurrent_samples")) c.max_concurrent_samples = j["max_concurrent_samples"].get<int>();
  if (j.contains("retry_on_unparseable")) c.retry_on_unparseable = j["retry_on_unparseable"].get<bool>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::int64_t>();
  if (c.frames_per_clip < 1 || c.frame_side_px < 1 || c.max_new_tokens < 1 ||
      c.max_concurrent_samples < 1 || c.temperature < 0)
    throw std::runtime_error("run config out of range");
  return c;
}

}  // namespace motor
