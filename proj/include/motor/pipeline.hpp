#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motor/backend.hpp"
#include "motor/config.hpp"
#include "motor/labels.hpp"
#include "motor/manifest.hpp"
#include "motor/prompts.hpp"

namespace motor {

struct StageEntry {
  std::string stage;  // Behavior, Cognition, Emotion, or Combined
  std::string prompt;
  std::vector<std::string> frame_refs;
  std::string raw_output;
  std::string extracted;  // rendered label or "Unparsed"
  double wall_time_ms = 0.0;
  int calls = 1;  // 1 plus any unparseable-retry
  std::uint64_t start_ns = 0;  // in-memory ordering only, not serialized
};

struct PredictedTriplet {
  std::optional<BehaviorLabel> behavior;
  std::optional<CognitionLabel> cognition;
  std::optional<EmotionLabel> emotion;

  bool fully_parsed() const { return behavior && cognition && emotion; }
};

struct StageTranscript {
  std::string clip_id;
  std::vector<StageEntry> stages;
  PredictedTriplet predicted;
  std::vector<std::string> warnings;
  bool failed = false;
  std::string error;
  int backend_calls = 0;
  int retries = 0;
};

struct RunSummary {
  int completed = 0;
  int failed = 0;
  int total_backend_calls = 0;
  int total_retries = 0;
  double wall_time_ms = 0.0;
};

struct RunResult {
  std::vector<StageTranscript> transcripts;  // input order
  RunSummary summary;
};

// One sample through the configured mode. Backend failures mark the
// transcript Failed; they never propagate.
StageTranscript run_sample(const ClipSample& sample, const RunConfig& config,
                           Backend& backend, const PromptEngine& prompts);

// All samples with at most max_concurrent_samples in flight; output order
// matches input order regardless of completion order.
RunResult run_dataset(const std::vector<ClipSample>& samples, const RunConfig& config,
                      Backend& backend, const PromptEngine& prompts);

std::string transcript_line(const StageTranscript& t);
std::string serialize_results(const std::vector<StageTranscript>& transcripts);
std::vector<StageTranscript> parse_results(const std::string& bytes);
std::string summary_json(const RunSummary& s);

}  // namespace motor
