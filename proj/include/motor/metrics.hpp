#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motor/labels.hpp"
#include "motor/pipeline.hpp"

namespace motor {

struct MetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MacroAveraging { PresentInGold, AllClasses };

// Labels are indices into a dimension's label space; a nullopt prediction is
// Unparsed (counts as FN for the gold class, FP for none).
double macro_f1(const std::vector<int>& gold, const std::vector<std::optional<int>>& pred,
                int n_classes, MacroAveraging averaging = MacroAveraging::PresentInGold);

double accuracy_pct(const std::vector<int>& gold,
                    const std::vector<std::optional<int>>& pred);

double avg_macro_f1(double behavior, double cognition, double emotion);

// Two decimals, matching the reported-score format.
double round2(double pct);

// kappa = (p_o - p_e) / (1 - p_e); 1.0 when both are 1.
double cohen_kappa(const std::vector<int>& ratings_a, const std::vector<int>& ratings_b,
                   int n_classes);

struct FlowTable {
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  std::vector<std::vector<int>> counts;
  std::vector<std::vector<double>> rows;  // row-normalized; zero-support rows empty
  std::vector<int> row_support;
};

struct FlowStatistics {
  FlowTable behavior_to_cognition;
  FlowTable cognition_to_emotion;
};

FlowStatistics flow_statistics(const std::vector<MentalStateTriplet>& triplets);

struct DimensionReport {
  std::string dimension;
  std::vector<std::string> class_names;           // plus trailing "Unparsed" column
  std::vector<std::vector<int>> confusion;        // gold x (pred + Unparsed)
  std::vector<double> precision, recall, f1;      // per class, percent
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  double unparsed_rate = 0.0;  // percent
};

struct EvalReport {
  DimensionReport behavior, cognition, emotion;
  double avg_macro_f1 = 0.0;
  FlowStatistics predicted_flow;  // over fully parsed predictions
  int scored_samples = 0;
  int skipped_failed = 0;
  int skipped_without_gold = 0;
};

// Joins transcripts to manifest gold by clip_id. Failed transcripts and
// samples without gold are skipped and counted, never scored.
EvalReport evaluate(const std::vector<ClipSample>& samples,
                    const std::vector<StageTranscript>& transcripts,
                    MacroAveraging averaging = MacroAveraging::PresentInGold);

std::string eval_report_json(const EvalReport& r);
std::string eval_report_markdown(const EvalReport& r);
std::string confusion_csv(const DimensionReport& d);

}  // namespace motor
