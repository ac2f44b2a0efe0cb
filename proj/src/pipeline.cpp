#include "motor/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "motor/extract.hpp"
#include "motor/frames.hpp"

namespace motor {

using nlohmann::json;

namespace {

std::uint64_t now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::steady_clock::now().time_since_epoch().count());
}

constexpr const char* kUnparsed = "Unparsed";

std::string retry_suffix(Stage stage) {
  return "\nReply with exactly one label from: " + label_menu(stage);
}

// One backend round for a stage, with the optional unparseable-retry.
StageEntry run_stage(Stage stage, const std::string& prompt,
                     const std::vector<std::string>& frame_refs,
                     const ClipSample& sample, const RunConfig& config,
                     Backend& backend, Extraction& out) {
  StageEntry entry;
  entry.stage = stage_name(stage);
  entry.prompt = prompt;
  entry.frame_refs = frame_refs;
  entry.start_ns = now_ns();

  ModelRequest req{prompt, frame_refs, config.temperature, config.max_new_tokens,
                   sample.clip_id, stage};
  ModelResponse res = backend.complete(req);
  entry.raw_output = res.text;
  entry.wall_time_ms = res.latency_ms;
  out = extract(stage, res.text);

  if (out.unparsed() && config.retry_on_unparseable) {
    ModelRequest retry = req;
    retry.prompt += retry_suffix(stage);
    ModelResponse res2 = backend.complete(retry);
    entry.calls = 2;
    entry.wall_time_ms += res2.latency_ms;
    Extraction second = extract(stage, res2.text);
    if (!second.unparsed()) {
      entry.raw_output = res2.text;
      out = second;
    }
  }
  entry.extracted = out.unparsed() ? kUnparsed : [&] {
    switch (stage) {
      case Stage::Behavior: return render_label(*as_behavior(out));
      case Stage::Cognition: return render_label(*as_cognition(out));
      case Stage::Emotion: return render_label(*as_emotion(out));
      default: return std::string(kUnparsed);
    }
  }();
  return entry;
}

}  // namespace

StageTranscript run_sample(const ClipSample& sample, const RunConfig& config,
                           Backend& backend, const PromptEngine& prompts) {
  StageTranscript t;
  t.clip_id = sample.clip_id;
  try {
    std::vector<std::string> frame_refs;
    if (config.mode != RunMode::TextOnly) {
      FramePlan plan = make_frame_plan(sample, config.frames_per_clip, config.frame_side_px);
      ValidatedFrames validated = validate_frames(sample, plan);
      frame_refs = std::move(validated.paths);
      for (const auto& w : validated.warnings) t.warnings.push_back(w.message);
    }
    PromptFlavor flavor =
        config.mode == RunMode::NoSRL ? PromptFlavor::Generic : PromptFlavor::SRL;

    if (config.mode == RunMode::SinglePass) {
      StageEntry entry;
      entry.stage = stage_name(Stage::Combined);
      entry.prompt = prompts.combined_prompt(sample, flavor);
      entry.frame_refs = frame_refs;
      entry.start_ns = now_ns();
      ModelRequest req{entry.prompt, frame_refs, config.temperature,
                       config.max_new_tokens, sample.clip_id, Stage::Combined};
      ModelResponse res = backend.complete(req);
      entry.raw_output = res.text;
      entry.wall_time_ms = res.latency_ms;
      CombinedExtraction ext = extract_combined(res.text);
      if (config.retry_on_unparseable &&
          (ext.behavior.unparsed() || ext.cognition.unparsed() || ext.emotion.unparsed())) {
        ModelRequest retry = req;
        retry.prompt +=
            "\nReply with exactly three lines: Behavior: <label>, Cognition: "
            "<label>, Emotion: <label>, one label per dimension.";
        ModelResponse res2 = backend.complete(retry);
        entry.calls = 2;
        entry.wall_time_ms += res2.latency_ms;
        CombinedExtraction second = extract_combined(res2.text);
        if (ext.behavior.unparsed()) ext.behavior = second.behavior;
        if (ext.cognition.unparsed()) ext.cognition = second.cognition;
        if (ext.emotion.unparsed()) ext.emotion = second.emotion;
        if (!second.behavior.unparsed() || !second.cognition.unparsed() ||
            !second.emotion.unparsed())
          entry.raw_output = res2.text;
      }
      t.predicted.behavior = as_behavior(ext.behavior);
      t.predicted.cognition = as_cognition(ext.cognition);
      t.predicted.emotion = as_emotion(ext.emotion);
      entry.extracted = (t.predicted.behavior ? render_label(*t.predicted.behavior)
                                              : std::string(kUnparsed)) +
                        ", " +
                        (t.predicted.cognition ? render_label(*t.predicted.cognition)
                                               : std::string(kUnparsed)) +
                        ", " +
                        (t.predicted.emotion ? render_label(*t.predicted.emotion)
                                             : std::string(kUnparsed));
      t.backend_calls = entry.calls;
      t.retries = entry.calls - 1;
      t.stages.push_back(std::move(entry));
      return t;
    }

    // Staged modes: Behavior -> Cognition -> Emotion, each prompt built
    // from the upstream extracted labels.
    Extraction eb, ec, ee;
    t.stages.push_back(run_stage(Stage::Behavior, prompts.behavior_prompt(sample, flavor),
                                 frame_refs, sample, config, backend, eb));
    t.predicted.behavior = as_behavior(eb);
    t.stages.push_back(run_stage(
        Stage::Cognition, prompts.cognition_prompt(sample, t.predicted.behavior, flavor),
        frame_refs, sample, config, backend, ec));
    t.predicted.cognition = as_cognition(ec);
    t.stages.push_back(run_stage(
        Stage::Emotion,
        prompts.emotion_prompt(sample, t.predicted.behavior, t.predicted.cognition, flavor),
        frame_refs, sample, config, backend, ee));
    t.predicted.emotion = as_emotion(ee);

    for (const auto& s : t.stages) {
      t.backend_calls += s.calls;
      t.retries += s.calls - 1;
    }
  } catch (const std::exception& e) {
    // keep call accounting for partially completed samples
    t.backend_calls = 0;
    for (const auto& s : t.stages) t.backend_calls += s.calls;
    t.failed = true;
    t.error = e.what();
  }
  return t;
}

RunResult run_dataset(const std::vector<ClipSample>& samples, const RunConfig& config,
                      Backend& backend, const PromptEngine& prompts) {
  RunResult result;
  result.transcripts.resize(samples.size());
  auto start = std::chrono::steady_clock::now();

  int workers = std::max(1, std::min<int>(config.max_concurrent_samples,
                                          static_cast<int>(samples.size())));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      result.transcripts[i] = run_sample(samples[i], config, backend, prompts);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (const auto& t : result.transcripts) {
    if (t.failed) ++result.summary.failed;
    else ++result.summary.completed;
    result.summary.total_backend_calls += t.backend_calls;
    result.summary.total_retries += t.retries;
  }
  result.summary.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::string transcript_line(const StageTranscript& t) {
  json stages = json::array();
  for (const auto& s : t.stages) {
    stages.push_back({{"stage", s.stage},
                      {"prompt", s.prompt},
                      {"frame_refs", s.frame_refs},
                      {"raw_output", s.raw_output},
                      {"extracted", s.extracted},
                      {"wall_time_ms", s.wall_time_ms},
                      {"calls", s.calls}});
  }
  auto slot = [](const auto& label) {
    return label ? json(render_label(*label)) : json("Unparsed");
  };
  json j = {{"clip_id", t.clip_id},
            {"stages", stages},
            {"predicted",
             {{"behavior", slot(t.predicted.behavior)},
              {"cognition", slot(t.predicted.cognition)},
              {"emotion", slot(t.predicted.emotion)}}},
            {"warnings", t.warnings},
            {"failed", t.failed},
            {"error", t.error},
            {"backend_calls", t.backend_calls},
            {"retries", t.retries}};
  return j.dump();
}

std::string serialize_results(const std::vector<StageTranscript>& transcripts) {
  std::string out;
  for (const auto& t : transcripts) {
    out += transcript_line(t);
    out += '\n';
  }
  return out;
}

std::vector<StageTranscript> parse_results(const std::string& bytes) {
  std::vector<StageTranscript> out;
  std::istringstream in(bytes);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line);
    StageTranscript t;
    t.clip_id = j.at("clip_id").get<std::string>();
    for (const auto& s : j.at("stages")) {
      StageEntry e;
      e.stage = s.at("stage").get<std::string>();
      e.prompt = s.at("prompt").get<std::string>();
      e.frame_refs = s.at("frame_refs").get<std::vector<std::string>>();
      e.raw_output = s.at("raw_output").get<std::string>();
      e.extracted = s.at("extracted").get<std::string>();
      e.wall_time_ms = s.at("wall_time_ms").get<double>();
      e.calls = s.at("calls").get<int>();
      t.stages.push_back(std::move(e));
    }
    const auto& p = j.at("predicted");
    t.predicted.behavior = parse_behavior(p.at("behavior").get<std::string>());
    t.predicted.cognition = parse_cognition(p.at("cognition").get<std::string>());
    t.predicted.emotion = parse_emotion(p.at("emotion").get<std::string>());
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
    t.failed = j.at("failed").get<bool>();
    t.error = j.at("error").get<std::string>();
    t.backend_calls = j.at("backend_calls").get<int>();
    t.retries = j.at("retries").get<int>();
    out.push_back(std::move(t));
  }
  return out;
}

std::string summary_json(const RunSummary& s) {
  json j = {{"completed", s.completed},
            {"failed", s.failed},
            {"total_backend_calls", s.total_backend_calls},
            {"total_retries", s.total_retries},
            {"wall_time_ms", s.wall_time_ms}};
  return j.dump(2);
}

}  // namespace motor
