// Command-line front end: eval, ablate, synth, report, extract-frames.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "motor/backend.hpp"
#include "motor/categorical.hpp"
#include "motor/config.hpp"
#include "motor/frames.hpp"
#include "motor/manifest.hpp"
#include "motor/metrics.hpp"
#include "motor/pipeline.hpp"
#include "motor/prompts.hpp"
#include "motor/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace motor;

namespace {

struct CommonFlags {
  std::string manifest_path;
  std::string backend_name = "echo-gold";
  std::string mode_name = "full";
  std::string endpoint;
  std::string out_dir;
  std::string templates_dir;
  std::string config_path;
  std::string model_json = "paper";  // probabilistic backend tables
  std::string script_path;           // scripted backend table
  std::string http_model = "default";
  std::string averaging = "present";
  std::int64_t seed = 0;
  int concurrency = 4;
  int frames_per_clip = 8;
  int frame_side_px = 448;
  double temperature = 0.0;
  int max_new_tokens = 1024;
  bool no_retry = false;
  bool trace = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool needs_mode) {
  cmd->add_option("--manifest", f.manifest_path, "Input manifest (JSONL)")->required();
  cmd->add_option("--backend", f.backend_name, "Backend: http, echo-gold, scripted, probabilistic")
      ->check(CLI::IsMember({"http", "echo-gold", "scripted", "probabilistic"}))
      ->capture_default_str();
  if (needs_mode)
    cmd->add_option("--mode", f.mode_name, "Run mode: full, single, no-srl, text-only")
        ->check(CLI::IsMember({"full", "single", "no-srl", "text-only"}))
        ->capture_default_str();
  cmd->add_option("--endpoint", f.endpoint, "HTTP backend base URL");
  cmd->add_option("--out", f.out_dir, "Output directory")->required();
  cmd->add_option("--templates", f.templates_dir, "Prompt template directory override");
  cmd->add_option("--config", f.config_path, "Run config JSON overlay (flag > file > default)");
  cmd->add_option("--model-json", f.model_json,
                  "Probabilistic backend tables: 'paper' or a model JSON path")
      ->capture_default_str();
  cmd->add_option("--script", f.script_path, "Scripted backend response table (JSON)");
  cmd->add_option("--http-model", f.http_model, "Model name sent to the HTTP backend")
      ->capture_default_str();
  cmd->add_option("--macro-averaging", f.averaging, "Macro-F1 classes: present or all")
      ->check(CLI::IsMember({"present", "all"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--concurrency", f.concurrency, "Max samples in flight")
      ->capture_default_str();
  cmd->add_option("--frames", f.frames_per_clip, "Frames sampled per clip")
      ->capture_default_str();
  cmd->add_option("--side", f.frame_side_px, "Expected square frame side in px")
      ->capture_default_str();
  cmd->add_option("--temperature", f.temperature, "Sampling temperature")
      ->capture_default_str();
  cmd->add_option("--max-tokens", f.max_new_tokens, "Generation cap in tokens")
      ->capture_default_str();
  cmd->add_flag("--no-retry", f.no_retry, "Disable the one unparseable-output retry");
  cmd->add_flag("--trace", f.trace, "Log HTTP request/response bodies (frames elided)");
}

// flag > config-file > default
RunConfig resolve_config(const CLI::App* cmd, const CommonFlags& f, bool needs_mode) {
  RunConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + f.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    config = run_config_from_json(buf.str());
  }
  auto passed = [&](const std::string& name) { return cmd->count(name) > 0; };
  if (needs_mode && passed("--mode")) {
    config.mode = *parse_run_mode(f.mode_name);
  } else if (needs_mode && f.config_path.empty()) {
    config.mode = *parse_run_mode(f.mode_name);
  }
  if (passed("--seed") || f.config_path.empty()) config.seed = f.seed;
  if (passed("--concurrency") || f.config_path.empty())
    config.max_concurrent_samples = f.concurrency;
  if (passed("--frames") || f.config_path.empty()) config.frames_per_clip = f.frames_per_clip;
  if (passed("--side") || f.config_path.empty()) config.frame_side_px = f.frame_side_px;
  if (passed("--temperature") || f.config_path.empty()) config.temperature = f.temperature;
  if (passed("--max-tokens") || f.config_path.empty())
    config.max_new_tokens = f.max_new_tokens;
  if (f.no_retry) config.retry_on_unparseable = false;
  return config;
}

std::unique_ptr<Backend> make_backend(const CommonFlags& f, const RunConfig& config,
                                      const std::vector<ClipSample>& samples) {
  if (f.backend_name == "echo-gold") return std::make_unique<EchoGoldBackend>(samples);
  if (f.backend_name == "scripted") {
    if (f.script_path.empty())
      throw CLI::ValidationError("--script", "scripted backend needs --script FILE");
    return std::make_unique<ScriptedBackend>(ScriptedBackend::from_json_file(f.script_path));
  }
  if (f.backend_name == "probabilistic") {
    CategoricalModel model;
    if (f.model_json == "paper") {
      model = paper_model();
    } else {
      std::ifstream in(f.model_json);
      if (!in) throw CLI::ValidationError("--model-json", "cannot open " + f.model_json);
      std::ostringstream buf;
      buf << in.rdbuf();
      model = categorical_model_from_json(buf.str());
    }
    return std::make_unique<ProbabilisticBackend>(std::move(model), config.seed);
  }
  if (f.endpoint.empty())
    throw CLI::ValidationError("--endpoint", "http backend needs --endpoint URL");
  HttpBackendOptions opts;
  opts.model_name = f.http_model;
  opts.trace = f.trace;
  return std::make_unique<HttpBackend>(f.endpoint, opts);
}

PromptEngine make_prompts(const CommonFlags& f) {
  return f.templates_dir.empty() ? PromptEngine()
                                 : PromptEngine::from_directory(f.templates_dir);
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

MacroAveraging averaging_of(const CommonFlags& f) {
  return f.averaging == "all" ? MacroAveraging::AllClasses : MacroAveraging::PresentInGold;
}

// Runs one mode into dir; returns the report (empty optional when no sample
// could be scored).
std::optional<EvalReport> run_and_report(const std::vector<ClipSample>& samples,
                                         const RunConfig& config, Backend& backend,
                                         const PromptEngine& prompts, const fs::path& dir,
                                         MacroAveraging averaging) {
  auto result = run_dataset(samples, config, backend, prompts);
  write_text(dir / "run_config.json", run_config_json(config));
  write_text(dir / "results.jsonl", serialize_results(result.transcripts));
  write_text(dir / "summary.json", summary_json(result.summary));
  if (result.summary.completed == 0) return std::nullopt;
  try {
    auto report = evaluate(samples, result.transcripts, averaging);
    write_text(dir / "report.json", eval_report_json(report));
    write_text(dir / "report.md", eval_report_markdown(report));
    for (const auto* d : {&report.behavior, &report.cognition, &report.emotion})
      write_text(dir / ("confusion_" + d->dimension + ".csv"), confusion_csv(*d));
    return report;
  } catch (const MetricError&) {
    // inference-only manifest: results stand, nothing to score
    return std::nullopt;
  }
}

int cmd_eval(const CLI::App* cmd, const CommonFlags& f) {
  auto samples = load_manifest(f.manifest_path);
  RunConfig config = resolve_config(cmd, f, true);
  auto backend = make_backend(f, config, samples);
  auto prompts = make_prompts(f);
  auto result = run_dataset(samples, config, *backend, prompts);
  fs::path dir(f.out_dir);
  write_text(dir / "run_config.json", run_config_json(config));
  write_text(dir / "results.jsonl", serialize_results(result.transcripts));
  write_text(dir / "summary.json", summary_json(result.summary));
  if (result.summary.completed == 0) {
    std::cerr << "error: all " << result.summary.failed << " samples failed\n";
    return 2;
  }
  try {
    auto report = evaluate(samples, result.transcripts, averaging_of(f));
    write_text(dir / "report.json", eval_report_json(report));
    write_text(dir / "report.md", eval_report_markdown(report));
    for (const auto* d : {&report.behavior, &report.cognition, &report.emotion})
      write_text(dir / ("confusion_" + d->dimension + ".csv"), confusion_csv(*d));
    std::cout << eval_report_markdown(report);
  } catch (const MetricError&) {
    std::cout << "no gold labels in manifest; wrote results without scores\n";
  }
  std::cout << "completed " << result.summary.completed << "/" << samples.size()
            << " samples, " << result.summary.total_backend_calls << " backend calls\n";
  return 0;
}

int cmd_ablate(const CLI::App* cmd, const CommonFlags& f) {
  auto samples = load_manifest(f.manifest_path);
  RunConfig base = resolve_config(cmd, f, false);
  auto prompts = make_prompts(f);
  const RunMode modes[] = {RunMode::FullMAS, RunMode::SinglePass, RunMode::NoSRL,
                           RunMode::TextOnly};
  std::map<RunMode, double> avg;
  fs::path dir(f.out_dir);
  for (RunMode mode : modes) {
    RunConfig config = base;
    config.mode = mode;  // shared seed across modes
    auto backend = make_backend(f, config, samples);
    auto report = run_and_report(samples, config, *backend, prompts,
                                 dir / run_mode_name(mode), averaging_of(f));
    if (!report) {
      std::cerr << "error: mode " << run_mode_name(mode) << " scored no samples\n";
      return 2;
    }
    avg[mode] = report->avg_macro_f1;
  }
  json table = json::array();
  std::ostringstream md;
  md << "| Mode | Avg Macro-F1 | Drop vs full |\n|---|---|---|\n";
  for (RunMode mode : modes) {
    double delta = avg[RunMode::FullMAS] - avg[mode];
    table.push_back({{"mode", run_mode_name(mode)},
                     {"avg_macro_f1", round2(avg[mode])},
                     {"delta_vs_full", round2(delta)}});
    md << "| " << run_mode_name(mode) << " | " << round2(avg[mode]) << " | "
       << round2(delta) << " |\n";
  }
  write_text(dir / "ablation.json", table.dump(2));
  write_text(dir / "ablation.md", md.str());
  std::cout << md.str();
  return 0;
}

int cmd_report(const CommonFlags& f, const std::string& results_path) {
  auto samples = load_manifest(f.manifest_path);
  std::ifstream in(results_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open results: " + results_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto transcripts = parse_results(buf.str());
  auto report = evaluate(samples, transcripts, averaging_of(f));
  fs::path dir(f.out_dir);
  write_text(dir / "report.json", eval_report_json(report));
  write_text(dir / "report.md", eval_report_markdown(report));
  for (const auto* d : {&report.behavior, &report.cognition, &report.emotion})
    write_text(dir / ("confusion_" + d->dimension + ".csv"), confusion_csv(*d));
  std::cout << eval_report_markdown(report);
  return 0;
}

int cmd_synth(int n, std::int64_t seed, const std::string& model_arg,
              const std::string& out_dir, const std::string& style, bool no_frames,
              int side) {
  CategoricalModel model;
  bool from_paper = model_arg == "paper";
  if (from_paper) {
    model = paper_model();
  } else {
    std::ifstream in(model_arg);
    if (!in) throw std::runtime_error("cannot open model JSON: " + model_arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    model = categorical_model_from_json(buf.str());
  }
  GeneratorSpec spec;
  spec.n_samples = n;
  spec.model = model;
  spec.seed = seed;
  spec.transcript_style =
      style == "plain" ? TranscriptStyle::Plain : TranscriptStyle::KeywordBearing;

  fs::path dir(out_dir);
  auto samples = generate(spec, (dir / "frames").string());
  write_text(dir / "manifest.jsonl", serialize_manifest(samples));
  if (!no_frames) write_frames(samples, side);

  // fully resolved model, with assumption provenance and implied marginals
  json model_out = json::parse(categorical_model_json(model));
  if (from_paper) {
    model_out["assumed"] = {
        "p_behavior[Controlling], p_behavior[Mixed]: split chosen so the implied "
        "C_Neutral marginal matches the published 47.8%",
        "p_cognition_given_behavior[Mixed]: copies the Monitoring row",
        "p_cognition_given_behavior[Controlling]: 0.009 residual split uniformly",
        "p_emotion_given_behavior_cognition: 0.70 on the valence-matching emotion, "
        "rest uniform"};
  }
  auto marg = marginalize(model);
  model_out["implied_marginals"] = {{"behavior", marg.behavior},
                                    {"cognition", marg.cognition},
                                    {"emotion", marg.emotion}};
  model_out["diagnostics"] = {
      {"emotion_neutral_target", 0.656},
      {"emotion_neutral_implied", marg.emotion[3]}};
  write_text(dir / "model.json", model_out.dump(2));
  std::cout << "wrote " << n << " samples to " << (dir / "manifest.jsonl").string() << "\n";
  return 0;
}

int cmd_extract_frames(const std::string& manifest_path, const std::string& out_dir,
                       const std::string& videos_dir, int side) {
  auto samples = load_manifest(manifest_path);
  std::ostringstream plan;
  for (const auto& s : samples) {
    fs::path video = fs::path(videos_dir) / (s.clip_id + ".mp4");
    plan << "mkdir -p '" << s.frames_dir << "' && ffmpeg -y -i '" << video.string()
         << "' -vf scale=" << side << ":" << side << " -start_number 0 '" << s.frames_dir
         << "/frame_%d.png'\n";
  }
  write_text(fs::path(out_dir) / "extract_plan.sh", plan.str());
  std::cout << "wrote " << samples.size() << " extraction commands to "
            << (fs::path(out_dir) / "extract_plan.sh").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staged behavior-cognition-emotion inference engine and eval harness"};
  app.require_subcommand(1);

  CommonFlags eval_flags, ablate_flags, report_flags;
  auto* eval_cmd = app.add_subcommand("eval", "Run one mode over a manifest and score it");
  add_common_flags(eval_cmd, eval_flags, true);

  auto* ablate_cmd =
      app.add_subcommand("ablate", "Run all four modes with a shared seed and emit a delta table");
  add_common_flags(ablate_cmd, ablate_flags, false);

  auto* report_cmd = app.add_subcommand("report", "Score an existing results JSONL");
  std::string results_path;
  report_cmd->add_option("--manifest", report_flags.manifest_path, "Manifest with gold labels")
      ->required();
  report_cmd->add_option("--results", results_path, "Results JSONL from eval")->required();
  report_cmd->add_option("--out", report_flags.out_dir, "Output directory")->required();
  report_cmd->add_option("--macro-averaging", report_flags.averaging, "present or all")
      ->check(CLI::IsMember({"present", "all"}))
      ->capture_default_str();

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic manifest and frames");
  int synth_n = 100;
  std::int64_t synth_seed = 0;
  std::string synth_model = "paper", synth_out, synth_style = "keyword";
  bool synth_no_frames = false;
  int synth_side = 448;
  synth_cmd->add_option("--n", synth_n, "Number of samples")->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--model", synth_model, "'paper' or a model JSON path")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--style", synth_style, "Transcript style: keyword or plain")
      ->check(CLI::IsMember({"keyword", "plain"}))
      ->capture_default_str();
  synth_cmd->add_flag("--no-frames", synth_no_frames, "Skip placeholder frame PNGs");
  synth_cmd->add_option("--side", synth_side, "Placeholder frame side in px")
      ->capture_default_str();

  auto* extract_cmd =
      app.add_subcommand("extract-frames", "Emit a shell plan that materializes frames");
  std::string ef_manifest, ef_out, ef_videos = "videos";
  int ef_side = 448;
  extract_cmd->add_option("--manifest", ef_manifest, "Input manifest")->required();
  extract_cmd->add_option("--out", ef_out, "Output directory for the plan file")->required();
  extract_cmd->add_option("--videos", ef_videos, "Directory holding <clip_id>.mp4 sources")
      ->capture_default_str();
  extract_cmd->add_option("--side", ef_side, "Target square side in px")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval_cmd, eval_flags);
    if (ablate_cmd->parsed()) return cmd_ablate(ablate_cmd, ablate_flags);
    if (report_cmd->parsed()) return cmd_report(report_flags, results_path);
    if (synth_cmd->parsed())
      return cmd_synth(synth_n, synth_seed, synth_model, synth_out, synth_style,
                       synth_no_frames, synth_side);
    if (extract_cmd->parsed())
      return cmd_extract_frames(ef_manifest, ef_out, ef_videos, ef_side);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
