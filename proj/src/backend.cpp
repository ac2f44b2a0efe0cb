#include "motor/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "motor/rng.hpp"

namespace motor {

using nlohmann::json;

namespace {

std::string answer_line(const std::string& label) { return "Answer: " + label; }

std::string combined_lines(const MentalStateTriplet& t) {
  return "Behavior: " + render_label(t.behavior) + "\nCognition: " +
         render_label(t.cognition) + "\nEmotion: " + render_label(t.emotion);
}

}  // namespace

EchoGoldBackend::EchoGoldBackend(const std::vector<ClipSample>& samples) {
  for (const auto& s : samples) {
    if (!s.gold)
      throw BackendError("echo-gold backend needs gold labels; clip " + s.clip_id +
                         " has none");
    gold_[s.clip_id] = *s.gold;
  }
}

ModelResponse EchoGoldBackend::complete(const ModelRequest& request) {
  auto it = gold_.find(request.clip_id);
  if (it == gold_.end())
    throw BackendError("echo-gold backend: unknown clip " + request.clip_id);
  const auto& t = it->second;
  std::string text;
  switch (request.stage) {
    case Stage::Behavior: text = answer_line(render_label(t.behavior)); break;
    case Stage::Cognition: text = answer_line(render_label(t.cognition)); break;
    case Stage::Emotion: text = answer_line(render_label(t.emotion)); break;
    case Stage::Combined: text = combined_lines(t); break;
  }
  return {text, 0.0, id()};
}

ScriptedBackend ScriptedBackend::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BackendError("cannot open script file: " + path);
  json j = json::parse(in);
  Script script;
  // {"clip_id": {"Behavior": "...", "Cognition": "...", ...}, ...}
  for (auto& [clip, stages] : j.items()) {
    for (auto& [stage_str, text] : stages.items()) {
      Stage stage;
      if (stage_str == "Behavior") stage = Stage::Behavior;
      else if (stage_str == "Cognition") stage = Stage::Cognition;
      else if (stage_str == "Emotion") stage = Stage::Emotion;
      else if (stage_str == "Combined") stage = Stage::Combined;
      else throw BackendError("script file: unknown stage '" + stage_str + "'");
      script[{clip, stage}] = text.get<std::string>();
    }
  }
  return ScriptedBackend(std::move(script));
}

ModelResponse ScriptedBackend::complete(const ModelRequest& request) {
  auto it = script_.find({request.clip_id, request.stage});
  return {it == script_.end() ? std::string{} : it->second, 0.0, id()};
}

ProbabilisticBackend::ProbabilisticBackend(CategoricalModel model, std::int64_t seed)
    : model_(std::move(model)), seed_(seed) {
  model_.validate();
}

MentalStateTriplet ProbabilisticBackend::sample_triplet(const std::string& clip_id) const {
  auto useed = static_cast<std::uint64_t>(seed_);
  double ub = rng::uniform01(rng::hash_key(useed, clip_id, "B"));
  int b = rng::sample_index(model_.p_behavior, ub);
  double uc = rng::uniform01(rng::hash_key(useed, clip_id, "C"));
  int c = rng::sample_index(model_.p_cognition_given_behavior[static_cast<size_t>(b)], uc);
  double ue = rng::uniform01(rng::hash_key(useed, clip_id, "E"));
  int e = rng::sample_index(
      model_.p_emotion_given_behavior_cognition[static_cast<size_t>(b) * 4 +
                                                static_cast<size_t>(c)],
      ue);
  return {kBehaviorLabels[static_cast<size_t>(b)], kCognitionLabels[static_cast<size_t>(c)],
          kEmotionLabels[static_cast<size_t>(e)]};
}

ModelResponse ProbabilisticBackend::complete(const ModelRequest& request) {
  MentalStateTriplet t = sample_triplet(request.clip_id);
  std::string text;
  switch (request.stage) {
    case Stage::Behavior: text = answer_line(render_label(t.behavior)); break;
    case Stage::Cognition: text = answer_line(render_label(t.cognition)); break;
    case Stage::Emotion: text = answer_line(render_label(t.emotion)); break;
    case Stage::Combined: text = combined_lines(t); break;
  }
  return {text, 0.0, id()};
}

std::vector<double> ProbabilisticBackend::stage_distribution(
    Stage stage, std::optional<BehaviorLabel> behavior,
    std::optional<CognitionLabel> cognition) const {
  switch (stage) {
    case Stage::Behavior:
      return {model_.p_behavior.begin(), model_.p_behavior.end()};
    case Stage::Cognition: {
      if (!behavior) throw DistributionError("cognition stage needs a behavior label");
      const auto& row = model_.p_cognition_given_behavior[static_cast<size_t>(*behavior)];
      return {row.begin(), row.end()};
    }
    case Stage::Emotion: {
      if (!behavior || !cognition)
        throw DistributionError("emotion stage needs behavior and cognition labels");
      const auto& row =
          model_.p_emotion_given_behavior_cognition[static_cast<size_t>(*behavior) * 4 +
                                                    static_cast<size_t>(*cognition)];
      return {row.begin(), row.end()};
    }
    case Stage::Combined:
      throw DistributionError("no single distribution for the combined stage");
  }
  return {};
}

std::string base64_encode(const std::string& bytes) {
  static const char* tbl =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  while (i + 2 < bytes.size()) {
    std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                      (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                      static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(tbl[(v >> 18) & 63]);
    out.push_back(tbl[(v >> 12) & 63]);
    out.push_back(tbl[(v >> 6) & 63]);
    out.push_back(tbl[v & 63]);
    i += 3;
  }
  if (i + 1 == bytes.size()) {
    std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(tbl[(v >> 18) & 63]);
    out.push_back(tbl[(v >> 12) & 63]);
    out += "==";
  } else if (i + 2 == bytes.size()) {
    std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                      (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(tbl[(v >> 18) & 63]);
    out.push_back(tbl[(v >> 12) & 63]);
    out.push_back(tbl[(v >> 6) & 63]);
    out += "=";
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BackendError("cannot read frame file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string mime_for(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0)
    return "image/png";
  return "image/jpeg";
}

}  // namespace

HttpBackend::HttpBackend(std::string endpoint, HttpBackendOptions options)
    : endpoint_(std::move(endpoint)), options_(std::move(options)) {
  if (options_.api_key.empty()) {
    if (const char* key = std::getenv("MOTOR_API_KEY")) options_.api_key = key;
  }
}

std::string HttpBackend::request_body(const ModelRequest& request) const {
  json content = json::array();
  for (const auto& ref : request.frame_refs) {
    std::string url = options_.send_file_paths
                          ? "file://" + ref
                          : "data:" + mime_for(ref) + ";base64," + base64_encode(read_file(ref));
    content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
  }
  content.push_back({{"type", "text"}, {"text", request.prompt}});
  json body = {{"model", options_.model_name},
               {"messages", json::array({{{"role", "user"}, {"content", content}}})},
               {"temperature", request.temperature},
               {"max_tokens", request.max_new_tokens},
               {"top_p", 1.0}};
  return body.dump();
}

ModelResponse HttpBackend::complete(const ModelRequest& request) {
  std::string body = request_body(request);
  if (options_.trace) {
    json traced = json::parse(body);
    for (auto& part : traced["messages"][0]["content"])
      if (part["type"] == "image_url") part["image_url"]["url"] = "<frame elided>";
    std::cerr << "{\"trace\":\"request\",\"body\":" << traced.dump() << "}\n";
  }

  httplib::Client client(endpoint_);
  client.set_connection_timeout(static_cast<time_t>(options_.timeout_s));
  client.set_read_timeout(static_cast<time_t>(options_.timeout_s));
  httplib::Headers headers;
  if (!options_.api_key.empty())
    headers.emplace("Authorization", "Bearer " + options_.api_key);

  double backoff = options_.initial_backoff_s;
  std::string last_error;
  for (int attempt = 0; attempt < options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2;
    }
    auto start = std::chrono::steady_clock::now();
    auto res = client.Post("/v1/chat/completions", headers, body, "application/json");
    auto latency = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;  // transport failure, retry
    }
    if (res->status < 200 || res->status >= 300) {
      std::string message = res->body;
      try {
        json err = json::parse(res->body);
        if (err.contains("error") && err["error"].contains("message"))
          message = err["error"]["message"].get<std::string>();
      } catch (const json::parse_error&) {
      }
      if (res->status >= 500) {
        last_error = message;
        continue;  // server-side, retry
      }
      throw BackendRejected(res->status, message);
    }
    json parsed;
    try {
      parsed = json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw MalformedResponse(std::string("response is not JSON: ") + e.what());
    }
    if (options_.trace)
      std::cerr << "{\"trace\":\"response\",\"body\":" << parsed.dump() << "}\n";
    try {
      std::string text =
          parsed.at("choices").at(0).at("message").at("content").get<std::string>();
      return {text, latency, id()};
    } catch (const json::exception&) {
      throw MalformedResponse("response missing choices[0].message.content");
    }
  }
  throw BackendUnavailable("backend unreachable after " +
                           std::to_string(options_.max_retries) +
                           " attempts: " + last_error);
}

}  // namespace motor
