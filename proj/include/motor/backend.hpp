#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motor/categorical.hpp"
#include "motor/labels.hpp"
#include "motor/manifest.hpp"

namespace motor {

struct ModelRequest {
  std::string prompt;
  std::vector<std::string> frame_refs;  // empty in text-only mode
  double temperature = 0.0;
  int max_new_tokens = 1024;
  // Routing metadata used by mock backends; the HTTP backend ignores it.
  std::string clip_id;
  Stage stage = Stage::Behavior;
};

struct ModelResponse {
  std::string text;
  double latency_ms = 0.0;
  std::string backend_id;
};

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BackendUnavailable : BackendError {
  using BackendError::BackendError;
};
struct BackendRejected : BackendError {
  BackendRejected(int status_, const std::string& msg)
      : BackendError("backend rejected request (status " + std::to_string(status_) + "): " + msg),
        status(status_) {}
  int status;
};
struct MalformedResponse : BackendError {
  using BackendError::BackendError;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual ModelResponse complete(const ModelRequest& request) = 0;
  virtual std::string id() const = 0;
};

// Replies with the sample's gold label for the requested stage. Requires
// gold on every sample it serves.
class EchoGoldBackend : public Backend {
 public:
  explicit EchoGoldBackend(const std::vector<ClipSample>& samples);
  ModelResponse complete(const ModelRequest& request) override;
  std::string id() const override { return "echo-gold"; }

 private:
  std::map<std::string, MentalStateTriplet> gold_;
};

// Fixed clip_id x stage response table; unknown keys answer with empty text.
class ScriptedBackend : public Backend {
 public:
  using Script = std::map<std::pair<std::string, Stage>, std::string>;
  explicit ScriptedBackend(Script script) : script_(std::move(script)) {}
  static ScriptedBackend from_json_file(const std::string& path);
  ModelResponse complete(const ModelRequest& request) override;
  std::string id() const override { return "scripted"; }

 private:
  Script script_;
};

// Samples one triplet per clip by ancestral draw from the model tables,
// then answers each stage with the sampled label. Deterministic in
// (seed, clip_id, stage); draws are counter-based, so call order and
// concurrency never change the output.
class ProbabilisticBackend : public Backend {
 public:
  ProbabilisticBackend(CategoricalModel model, std::int64_t seed);
  ModelResponse complete(const ModelRequest& request) override;
  std::string id() const override { return "probabilistic"; }

  MentalStateTriplet sample_triplet(const std::string& clip_id) const;

  // The exact conditional the mock samples from at a stage. Conditioning
  // labels are required exactly where the factorization needs them.
  std::vector<double> stage_distribution(
      Stage stage, std::optional<BehaviorLabel> behavior = std::nullopt,
      std::optional<CognitionLabel> cognition = std::nullopt) const;

  const CategoricalModel& model() const { return model_; }

 private:
  CategoricalModel model_;
  std::int64_t seed_;
};

struct HttpBackendOptions {
  std::string model_name = "default";
  int max_retries = 3;
  double initial_backoff_s = 1.0;  // doubled per retry: 1s, 2s, 4s
  double timeout_s = 120.0;
  bool send_file_paths = false;  // default: base64 data URLs
  bool trace = false;            // log request/response bodies, frames elided
  std::string api_key;           // read MOTOR_API_KEY when empty
};

// Chat-completions-style client: one user message with the image parts
// first, then the text part.
class HttpBackend : public Backend {
 public:
  HttpBackend(std::string endpoint, HttpBackendOptions options = {});
  ModelResponse complete(const ModelRequest& request) override;
  std::string id() const override { return "http:" + endpoint_; }

  // Exposed for tests: the exact JSON body sent for a request.
  std::string request_body(const ModelRequest& request) const;

 private:
  std::string endpoint_;
  HttpBackendOptions options_;
};

std::string base64_encode(const std::string& bytes);

}  // namespace motor
