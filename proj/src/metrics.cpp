#include "motor/metrics.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace motor {

using nlohmann::json;

namespace {

void check_lengths(size_t a, size_t b) {
  if (a != b) throw MetricError("gold/pred length mismatch");
  if (a == 0) throw MetricError("empty input lists");
}

struct ClassCounts {
  int tp = 0, fp = 0, fn = 0;
};

std::vector<ClassCounts> count_classes(const std::vector<int>& gold,
                                       const std::vector<std::optional<int>>& pred,
                                       int n_classes) {
  std::vector<ClassCounts> counts(static_cast<size_t>(n_classes));
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] < 0 || gold[i] >= n_classes) throw MetricError("gold label out of range");
    if (pred[i] && (*pred[i] < 0 || *pred[i] >= n_classes))
      throw MetricError("pred label out of range");
    if (pred[i] && *pred[i] == gold[i]) {
      ++counts[static_cast<size_t>(gold[i])].tp;
    } else {
      ++counts[static_cast<size_t>(gold[i])].fn;
      if (pred[i]) ++counts[static_cast<size_t>(*pred[i])].fp;
      // Unparsed: FN for the gold class, FP for no class.
    }
  }
  return counts;
}

double f1_of(const ClassCounts& c) {
  double p = (c.tp + c.fp) == 0 ? 0.0 : static_cast<double>(c.tp) / (c.tp + c.fp);
  double r = (c.tp + c.fn) == 0 ? 0.0 : static_cast<double>(c.tp) / (c.tp + c.fn);
  return (p + r) == 0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

double macro_f1(const std::vector<int>& gold, const std::vector<std::optional<int>>& pred,
                int n_classes, MacroAveraging averaging) {
  check_lengths(gold.size(), pred.size());
  auto counts = count_classes(gold, pred, n_classes);
  std::set<int> in_gold(gold.begin(), gold.end());
  double sum = 0.0;
  int n = 0;
  for (int c = 0; c < n_classes; ++c) {
    if (averaging == MacroAveraging::PresentInGold && !in_gold.count(c)) continue;
    sum += f1_of(counts[static_cast<size_t>(c)]);
    ++n;
  }
  return n == 0 ? 0.0 : 100.0 * sum / n;
}

double accuracy_pct(const std::vector<int>& gold,
                    const std::vector<std::optional<int>>& pred) {
  check_lengths(gold.size(), pred.size());
  int hits = 0;
  for (size_t i = 0; i < gold.size(); ++i)
    if (pred[i] && *pred[i] == gold[i]) ++hits;
  return 100.0 * hits / static_cast<double>(gold.size());
}

double avg_macro_f1(double behavior, double cognition, double emotion) {
  return (behavior + cognition + emotion) / 3.0;
}

double round2(double pct) { return std::round(pct * 100.0) / 100.0; }

double cohen_kappa(const std::vector<int>& ratings_a, const std::vector<int>& ratings_b,
                   int n_classes) {
  check_lengths(ratings_a.size(), ratings_b.size());
  const double n = static_cast<double>(ratings_a.size());
  std::vector<double> marg_a(static_cast<size_t>(n_classes), 0.0);
  std::vector<double> marg_b(static_cast<size_t>(n_classes), 0.0);
  double agree = 0.0;
  for (size_t i = 0; i < ratings_a.size(); ++i) {
    if (ratings_a[i] < 0 || ratings_a[i] >= n_classes || ratings_b[i] < 0 ||
        ratings_b[i] >= n_classes)
      throw MetricError("rating out of range");
    marg_a[static_cast<size_t>(ratings_a[i])] += 1.0;
    marg_b[static_cast<size_t>(ratings_b[i])] += 1.0;
    if (ratings_a[i] == ratings_b[i]) agree += 1.0;
  }
  double p_o = agree / n;
  double p_e = 0.0;
  for (int c = 0; c < n_classes; ++c)
    p_e += (marg_a[static_cast<size_t>(c)] / n) * (marg_b[static_cast<size_t>(c)] / n);
  if (std::abs(1.0 - p_e) < 1e-15) return p_o >= 1.0 - 1e-15 ? 1.0 : 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

namespace {

FlowTable make_flow(const std::vector<std::pair<int, int>>& pairs,
                    std::vector<std::string> row_names,
                    std::vector<std::string> col_names) {
  FlowTable t;
  t.row_names = std::move(row_names);
  t.col_names = std::move(col_names);
  t.counts.assign(t.row_names.size(), std::vector<int>(t.col_names.size(), 0));
  for (auto [r, c] : pairs) ++t.counts[static_cast<size_t>(r)][static_cast<size_t>(c)];
  t.row_support.resize(t.row_names.size());
  t.rows.resize(t.row_names.size());
  for (size_t r = 0; r < t.row_names.size(); ++r) {
    int support = 0;
    for (int v : t.counts[r]) support += v;
    t.row_support[r] = support;
    if (support > 0) {
      t.rows[r].resize(t.col_names.size());
      for (size_t c = 0; c < t.col_names.size(); ++c)
        t.rows[r][c] = static_cast<double>(t.counts[r][c]) / support;
    }
    // zero-support rows stay empty rather than NaN
  }
  return t;
}

std::vector<std::string> names_of(Stage stage) {
  std::vector<std::string> out;
  switch (stage) {
    case Stage::Behavior:
      for (auto b : kBehaviorLabels) out.push_back(render_label(b));
      break;
    case Stage::Cognition:
      for (auto c : kCognitionLabels) out.push_back(render_label(c));
      break;
    case Stage::Emotion:
      for (auto e : kEmotionLabels) out.push_back(render_label(e));
      break;
    case Stage::Combined:
      break;
  }
  return out;
}

}  // namespace

FlowStatistics flow_statistics(const std::vector<MentalStateTriplet>& triplets) {
  if (triplets.empty()) throw MetricError("flow_statistics: empty triplet list");
  std::vector<std::pair<int, int>> bc, ce;
  bc.reserve(triplets.size());
  ce.reserve(triplets.size());
  for (const auto& t : triplets) {
    bc.emplace_back(static_cast<int>(t.behavior), static_cast<int>(t.cognition));
    ce.emplace_back(static_cast<int>(t.cognition), static_cast<int>(t.emotion));
  }
  FlowStatistics out;
  out.behavior_to_cognition =
      make_flow(bc, names_of(Stage::Behavior), names_of(Stage::Cognition));
  out.cognition_to_emotion =
      make_flow(ce, names_of(Stage::Cognition), names_of(Stage::Emotion));
  return out;
}

namespace {

DimensionReport dimension_report(const std::string& name,
                                 const std::vector<std::string>& class_names,
                                 const std::vector<int>& gold,
                                 const std::vector<std::optional<int>>& pred,
                                 MacroAveraging averaging) {
  DimensionReport d;
  d.dimension = name;
  d.class_names = class_names;
  d.class_names.push_back("Unparsed");
  const int n_classes = static_cast<int>(class_names.size());
  d.confusion.assign(class_names.size(), std::vector<int>(class_names.size() + 1, 0));
  int unparsed = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    size_t col = pred[i] ? static_cast<size_t>(*pred[i]) : class_names.size();
    if (!pred[i]) ++unparsed;
    ++d.confusion[static_cast<size_t>(gold[i])][col];
  }
  auto counts = count_classes(gold, pred, n_classes);
  for (int c = 0; c < n_classes; ++c) {
    const auto& cc = counts[static_cast<size_t>(c)];
    double p = (cc.tp + cc.fp) == 0 ? 0.0 : 100.0 * cc.tp / (cc.tp + cc.fp);
    double r = (cc.tp + cc.fn) == 0 ? 0.0 : 100.0 * cc.tp / (cc.tp + cc.fn);
    d.precision.push_back(p);
    d.recall.push_back(r);
    d.f1.push_back(100.0 * f1_of(cc));
  }
  d.macro_f1 = macro_f1(gold, pred, n_classes, averaging);
  d.accuracy = accuracy_pct(gold, pred);
  d.unparsed_rate = 100.0 * unparsed / static_cast<double>(gold.size());
  return d;
}

}  // namespace

EvalReport evaluate(const std::vector<ClipSample>& samples,
                    const std::vector<StageTranscript>& transcripts,
                    MacroAveraging averaging) {
  std::map<std::string, const ClipSample*> by_id;
  for (const auto& s : samples) by_id[s.clip_id] = &s;

  std::vector<int> gold_b, gold_c, gold_e;
  std::vector<std::optional<int>> pred_b, pred_c, pred_e;
  std::vector<MentalStateTriplet> parsed_predictions;
  EvalReport r;

  for (const auto& t : transcripts) {
    if (t.failed) {
      ++r.skipped_failed;
      continue;
    }
    auto it = by_id.find(t.clip_id);
    if (it == by_id.end() || !it->second->gold) {
      ++r.skipped_without_gold;
      continue;
    }
    const auto& g = *it->second->gold;
    gold_b.push_back(static_cast<int>(g.behavior));
    gold_c.push_back(static_cast<int>(g.cognition));
    gold_e.push_back(static_cast<int>(g.emotion));
    auto opt_idx = [](const auto& label) -> std::optional<int> {
      if (!label) return std::nullopt;
      return static_cast<int>(*label);
    };
    pred_b.push_back(opt_idx(t.predicted.behavior));
    pred_c.push_back(opt_idx(t.predicted.cognition));
    pred_e.push_back(opt_idx(t.predicted.emotion));
    if (t.predicted.fully_parsed())
      parsed_predictions.push_back(
          {*t.predicted.behavior, *t.predicted.cognition, *t.predicted.emotion});
  }
  if (gold_b.empty()) throw MetricError("no scorable samples (gold labels required)");

  r.scored_samples = static_cast<int>(gold_b.size());
  r.behavior =
      dimension_report("behavior", names_of(Stage::Behavior), gold_b, pred_b, averaging);
  r.cognition =
      dimension_report("cognition", names_of(Stage::Cognition), gold_c, pred_c, averaging);
  r.emotion =
      dimension_report("emotion", names_of(Stage::Emotion), gold_e, pred_e, averaging);
  r.avg_macro_f1 = avg_macro_f1(r.behavior.macro_f1, r.cognition.macro_f1, r.emotion.macro_f1);
  if (!parsed_predictions.empty()) r.predicted_flow = flow_statistics(parsed_predictions);
  return r;
}

namespace {

json dimension_json(const DimensionReport& d) {
  json per_class = json::array();
  for (size_t c = 0; c + 1 < d.class_names.size(); ++c)
    per_class.push_back({{"label", d.class_names[c]},
                         {"precision", round2(d.precision[c])},
                         {"recall", round2(d.recall[c])},
                         {"f1", round2(d.f1[c])}});
  return {{"dimension", d.dimension},
          {"per_class", per_class},
          {"macro_f1", round2(d.macro_f1)},
          {"accuracy", round2(d.accuracy)},
          {"unparsed_rate", round2(d.unparsed_rate)},
          {"confusion_labels", d.class_names},
          {"confusion", d.confusion}};
}

json flow_json(const FlowTable& t) {
  json rows = json::object();
  for (size_t r = 0; r < t.row_names.size(); ++r) {
    if (t.row_support[r] == 0) {
      rows[t.row_names[r]] = json::array();  // empty, no support
      continue;
    }
    json row = json::object();
    for (size_t c = 0; c < t.col_names.size(); ++c) row[t.col_names[c]] = t.rows[r][c];
    rows[t.row_names[r]] = row;
  }
  return {{"rows", rows}, {"support", t.row_support}};
}

}  // namespace

std::string eval_report_json(const EvalReport& r) {
  json j = {{"behavior", dimension_json(r.behavior)},
            {"cognition", dimension_json(r.cognition)},
            {"emotion", dimension_json(r.emotion)},
            {"avg_macro_f1", round2(r.avg_macro_f1)},
            {"scored_samples", r.scored_samples},
            {"skipped_failed", r.skipped_failed},
            {"skipped_without_gold", r.skipped_without_gold},
            {"flow",
             {{"behavior_to_cognition", flow_json(r.predicted_flow.behavior_to_cognition)},
              {"cognition_to_emotion", flow_json(r.predicted_flow.cognition_to_emotion)}}}};
  return j.dump(2);
}

namespace {

std::string fmt2(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << v;
  return out.str();
}

}  // namespace

std::string eval_report_markdown(const EvalReport& r) {
  std::ostringstream out;
  out << "| Dimension | Macro-F1 | Accuracy | Unparsed % |\n";
  out << "|---|---|---|---|\n";
  for (const auto* d : {&r.behavior, &r.cognition, &r.emotion})
    out << "| " << d->dimension << " | " << fmt2(round2(d->macro_f1)) << " | "
        << fmt2(round2(d->accuracy)) << " | " << fmt2(round2(d->unparsed_rate)) << " |\n";
  out << "| **avg** | " << fmt2(round2(r.avg_macro_f1)) << " | | |\n\n";
  out << "Scored " << r.scored_samples << " samples (" << r.skipped_failed
      << " failed, " << r.skipped_without_gold << " without gold skipped).\n";
  return out.str();
}

std::string confusion_csv(const DimensionReport& d) {
  std::ostringstream out;
  out << "gold\\pred";
  for (const auto& name : d.class_names) out << "," << name;
  out << "\n";
  for (size_t r = 0; r + 1 < d.class_names.size(); ++r) {
    out << d.class_names[r];
    for (int v : d.confusion[r]) out << "," << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace motor
