#include "motor/manifest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace motor {

using nlohmann::json;

namespace {

[[noreturn]] void fail(size_t line_no, const std::string& what) {
  throw ManifestError("manifest line " + std::to_string(line_no) + ": " + what);
}

MentalStateTriplet parse_gold(const json& g, size_t line_no) {
  for (const char* f : {"behavior", "cognition", "emotion"})
    if (!g.contains(f) || !g[f].is_string()) fail(line_no, std::string("gold missing field '") + f + "'");
  auto b = parse_behavior(g["behavior"].get<std::string>());
  auto c = parse_cognition(g["cognition"].get<std::string>());
  auto e = parse_emotion(g["emotion"].get<std::string>());
  if (!b) fail(line_no, "unknown behavior label '" + g["behavior"].get<std::string>() + "'");
  if (!c) fail(line_no, "unknown cognition label '" + g["cognition"].get<std::string>() + "'");
  if (!e) fail(line_no, "unknown emotion label '" + g["emotion"].get<std::string>() + "'");
  return {*b, *c, *e};
}

}  // namespace

std::vector<ClipSample> parse_manifest(const std::string& bytes) {
  std::vector<ClipSample> out;
  std::unordered_set<std::string> seen;
  std::istringstream in(bytes);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(line_no, "not a JSON object");
    ClipSample s;
    if (!j.contains("clip_id") || !j["clip_id"].is_string()) fail(line_no, "missing field 'clip_id'");
    s.clip_id = j["clip_id"].get<std::string>();
    if (!seen.insert(s.clip_id).second) fail(line_no, "duplicate clip_id '" + s.clip_id + "'");
    if (!j.contains("frames_dir") || !j["frames_dir"].is_string()) fail(line_no, "missing field 'frames_dir'");
    s.frames_dir = j["frames_dir"].get<std::string>();
    if (!j.contains("transcript") || !j["transcript"].is_string()) fail(line_no, "missing field 'transcript'");
    s.transcript = j["transcript"].get<std::string>();
    if (!j.contains("duration_s") || !j["duration_s"].is_number()) fail(line_no, "missing field 'duration_s'");
    s.duration_s = j["duration_s"].get<double>();
    if (s.duration_s < 0) fail(line_no, "duration_s must be nonnegative");
    if (j.contains("group_size") && !j["group_size"].is_null()) {
      if (!j["group_size"].is_number_integer()) fail(line_no, "group_size must be an integer or null");
      s.group_size = j["group_size"].get<int>();
    }
    if (j.contains("gold") && !j["gold"].is_null()) s.gold = parse_gold(j["gold"], line_no);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ClipSample> load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string manifest_line(const ClipSample& s) {
  json j;
  j["clip_id"] = s.clip_id;
  j["frames_dir"] = s.frames_dir;
  j["transcript"] = s.transcript;
  j["duration_s"] = s.duration_s;
  j["group_size"] = s.group_size ? json(*s.group_size) : json(nullptr);
  if (s.gold) {
    j["gold"] = {{"behavior", render_label(s.gold->behavior)},
                 {"cognition", render_label(s.gold->cognition)},
                 {"emotion", render_label(s.gold->emotion)}};
  } else {
    j["gold"] = nullptr;
  }
  return j.dump();
}

std::string serialize_manifest(const std::vector<ClipSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += manifest_line(s);
    out += '\n';
  }
  return out;
}

}  // namespace motor
