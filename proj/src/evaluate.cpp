#include "phaseeval/evaluate.hpp"

#include <string>

#include "phaseeval/confusion.hpp"
#include "phaseeval/parallel.hpp"

namespace phaseeval {

WorkflowGraph default_graph(std::size_t phase_count) {
  if (phase_count == 7) return cholec80_graph();
  return WorkflowGraph::linear(phase_count);
}

namespace {

std::vector<PhaseId> phase_ids_of(std::size_t n) {
  std::vector<PhaseId> ids(n);
  for (std::size_t p = 0; p < n; ++p) ids[p] = static_cast<PhaseId>(p);
  return ids;
}

std::vector<VideoId> video_ids_of(const EvaluationInput& input) {
  std::vector<VideoId> ids;
  for (const auto& v : input.videos) ids.push_back(v.video_id);
  return ids;
}

std::string phase_name(std::size_t phase_count, std::size_t p) {
  if (phase_count == 7) return PhaseSet::cholec80().names[p];
  return "phase " + std::to_string(p);
}

// NoDefinedCells yields an all-n/a summary instead of aborting the report.
Summary safe_summarize(const ResultTensor& t, const SummarySpec& spec) {
  try {
    return summarize(t, spec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoDefinedCells) throw;
    Summary s;
    s.std_mode = spec.std_mode;
    s.order = spec.order;
    return s;
  }
}

ResultTensor run_slice(const ResultTensor& t, std::size_t r) {
  ResultTensor slice(t.phase_ids(), t.video_ids(), {t.run_ids()[r]});
  for (std::size_t p = 0; p < t.phases(); ++p)
    for (std::size_t v = 0; v < t.videos(); ++v) slice.at(p, v, 0) = t.at(p, v, r);
  return slice;
}

ReportProtocol base_protocol(const EvaluationInput& input, const EvaluationOptions& options) {
  ReportProtocol p;
  p.policy = options.policy;
  p.order = options.summary.order;
  p.std_mode = options.summary.std_mode;
  p.split = input.split;
  p.phase_count = input.phase_count;
  p.videos = input.videos.size();
  p.run_ids = input.run_ids;
  return p;
}

void add_per_phase(EvaluationReport& report, std::size_t n, const std::vector<std::string>& names,
                   const std::vector<const ResultTensor*>& tensors, const SummarySpec& spec) {
  for (std::size_t p = 0; p < n; ++p) {
    PhaseSummary ps{static_cast<PhaseId>(p), phase_name(n, p), {}};
    for (std::size_t k = 0; k < tensors.size(); ++k)
      ps.metrics.push_back({names[k], "phase-wise", safe_summarize(tensors[k]->phase_slice(p), spec)});
    report.per_phase.push_back(std::move(ps));
  }
}

}  // namespace

EvaluationReport evaluate(const EvaluationInput& input, const EvaluationOptions& options) {
  validate_input(input);
  const std::size_t n = input.phase_count;
  const std::size_t V = input.videos.size();
  const std::size_t R = input.run_ids.size();
  const auto& spec = options.summary;

  std::vector<std::vector<ConfusionMatrix>> conf(V);
  parallel_for(V, options.jobs, [&](std::size_t v) {
    const auto& entry = input.videos[v];
    for (std::size_t r = 0; r < R; ++r) conf[v].push_back(confusion_of(entry.annotation, entry.runs[r], n));
  });

  const auto phase_ids = phase_ids_of(n);
  const auto video_ids = video_ids_of(input);
  std::vector<std::vector<bool>> presence(V, std::vector<bool>(n));
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t p = 0; p < n; ++p) presence[v][p] = conf[v][0].row_sum(static_cast<PhaseId>(p)) > 0;

  EvaluationReport report;
  report.protocol = base_protocol(input, options);

  std::vector<ResultTensor> phase_tensors;
  for (auto kind : kPhaseMetricKinds) {
    ResultTensor t(phase_ids, video_ids, input.run_ids);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t v = 0; v < V; ++v)
        for (std::size_t r = 0; r < R; ++r) t.at(p, v, r) = phase_metric(kind, conf[v][r], static_cast<PhaseId>(p));
    apply_policy(t, options.policy, presence);
    report.summary.push_back({std::string(to_string(kind)), "phase-wise", safe_summarize(t, spec)});
    phase_tensors.push_back(std::move(t));
  }

  // Video-level values: one cell per (video, run).
  auto video_tensor = [&](auto&& cell_of) {
    ResultTensor t({0}, video_ids, input.run_ids);
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t r = 0; r < R; ++r) t.at(0, v, r) = cell_of(conf[v][r]);
    return t;
  };
  report.summary.push_back(
      {"accuracy", "video-level", safe_summarize(video_tensor([](const auto& c) { return accuracy(c); }), spec)});
  for (auto kind : kPhaseMetricKinds) {
    auto t = video_tensor([&](const auto& c) { return macro_metric(kind, c, options.policy); });
    report.summary.push_back({"macro_" + std::string(to_string(kind)), "video-level", safe_summarize(t, spec)});
  }
  report.summary.push_back(
      {"macro_f1_of_means", "video-level",
       safe_summarize(video_tensor([&](const auto& c) { return macro_f1_of_means(c, options.policy); }), spec)});

  // Harmonic mean of the overall mean precision and recall, with its spread
  // over runs from the per-run means.
  {
    Summary s;
    s.std_mode = spec.std_mode;
    s.order = spec.order;
    auto upper = [&](const ResultTensor& prec, const ResultTensor& rec) -> std::optional<double> {
      try {
        return f1_upper(ordered_mean(prec, spec.order), ordered_mean(rec, spec.order));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoDefinedCells && e.code() != ErrorCode::DegenerateMeans) throw;
        return std::nullopt;
      }
    };
    s.mean = upper(phase_tensors[0], phase_tensors[1]);
    std::vector<double> per_run;
    for (std::size_t r = 0; r < R; ++r)
      if (auto u = upper(run_slice(phase_tensors[0], r), run_slice(phase_tensors[1], r))) per_run.push_back(*u);
    if (s.mean && per_run.size() >= 2) s.sd_runs = sample_std(per_run, spec.std_mode, Axis::Runs);
    report.summary.push_back({"f1_upper", "test-set", s});
  }

  // Frame-wise metrics on the confusion matrix summed over videos.
  {
    std::vector<ConfusionMatrix> summed;
    for (std::size_t r = 0; r < R; ++r) {
      std::vector<ConfusionMatrix> per_video;
      for (std::size_t v = 0; v < V; ++v) per_video.push_back(conf[v][r]);
      summed.push_back(sum_confusions(per_video));
    }
    std::vector<std::vector<bool>> summed_presence(1, std::vector<bool>(n));
    for (std::size_t p = 0; p < n; ++p) summed_presence[0][p] = summed[0].row_sum(static_cast<PhaseId>(p)) > 0;
    for (auto kind : kPhaseMetricKinds) {
      ResultTensor t(phase_ids, {0}, input.run_ids);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t r = 0; r < R; ++r) t.at(p, 0, r) = phase_metric(kind, summed[r], static_cast<PhaseId>(p));
      apply_policy(t, options.policy, summed_presence);
      report.summary.push_back({"frame_" + std::string(to_string(kind)), "frame-wise", safe_summarize(t, spec)});
    }
    ResultTensor acc({0}, {0}, input.run_ids);
    for (std::size_t r = 0; r < R; ++r) acc.at(0, 0, r) = accuracy(summed[r]);
    report.summary.push_back({"frame_accuracy", "frame-wise", safe_summarize(acc, spec)});
  }

  std::vector<std::string> names;
  std::vector<const ResultTensor*> ptrs;
  for (std::size_t k = 0; k < phase_tensors.size(); ++k) {
    names.emplace_back(to_string(kPhaseMetricKinds[k]));
    ptrs.push_back(&phase_tensors[k]);
  }
  add_per_phase(report, n, names, ptrs, spec);

  if (options.per_video) {
    std::vector<VideoCells> cells;
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t r = 0; r < R; ++r) {
        VideoCells vc{video_ids[v], input.run_ids[r], {}, {}};
        for (std::size_t k = 0; k < phase_tensors.size(); ++k)
          for (std::size_t p = 0; p < n; ++p) vc.phase_metrics[names[k]].push_back(phase_tensors[k].at(p, v, r));
        vc.video_metrics["accuracy"] = accuracy(conf[v][r]);
        cells.push_back(std::move(vc));
      }
    report.per_video = std::move(cells);
  }
  return report;
}

EvaluationReport evaluate_relaxed(const EvaluationInput& input, const RelaxedConfig& config,
                                  const EvaluationOptions& options, const WorkflowGraph& graph) {
  if (config.bug_compatible) return legacy_report(legacy_pipeline(input, config, graph), input);
  validate_input(input);
  if (graph.phase_count() != input.phase_count)
    throw Error(ErrorCode::DimensionMismatch, "workflow graph does not match the phase count");
  const std::size_t n = input.phase_count;
  const std::size_t V = input.videos.size();
  const std::size_t R = input.run_ids.size();
  const auto& spec = options.summary;
  const auto matrices = build_matrices(graph, config.matrix_mode);

  // counts[v][r][p] and flags[v][r]
  std::vector<std::vector<std::vector<RelaxedCounts>>> counts(V);
  std::vector<std::vector<MetricCell>> acc(V);
  parallel_for(V, options.jobs, [&](std::size_t v) {
    const auto& entry = input.videos[v];
    for (std::size_t r = 0; r < R; ++r) {
      const auto flags = relax_flags(entry.annotation.view(), entry.runs[r].view(), config.omega, matrices);
      acc[v].push_back(relaxed_accuracy(flags));
      std::vector<RelaxedCounts> per_phase;
      for (std::size_t p = 0; p < n; ++p)
        per_phase.push_back(
            relaxed_counts(entry.annotation.view(), entry.runs[r].view(), flags, static_cast<PhaseId>(p)));
      counts[v].push_back(std::move(per_phase));
    }
  });

  const auto phase_ids = phase_ids_of(n);
  const auto video_ids = video_ids_of(input);
  std::vector<std::vector<bool>> presence(V, std::vector<bool>(n));
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t p = 0; p < n; ++p) presence[v][p] = counts[v][0][p].annot_count > 0;

  EvaluationReport report;
  report.protocol = base_protocol(input, options);
  report.protocol.mode = "relaxed";
  report.protocol.relaxed = true;
  report.protocol.omega = config.omega;
  report.protocol.matrices = config.matrix_mode;
  report.protocol.truncate = config.truncate;

  std::vector<ResultTensor> tensors;
  std::vector<std::string> names;
  for (auto kind : kRelaxedKinds) {
    ResultTensor t(phase_ids, video_ids, input.run_ids);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t v = 0; v < V; ++v)
        for (std::size_t r = 0; r < R; ++r) t.at(p, v, r) = relaxed_metric(kind, counts[v][r][p], config.truncate);
    apply_policy(t, options.policy, presence);
    names.emplace_back(to_string(kind));
    report.summary.push_back({names.back(), "phase-wise", safe_summarize(t, spec)});
    tensors.push_back(std::move(t));
  }
  ResultTensor acc_tensor({0}, video_ids, input.run_ids);
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t r = 0; r < R; ++r) acc_tensor.at(0, v, r) = acc[v][r];
  report.summary.push_back({"accuracy", "video-level", safe_summarize(acc_tensor, spec)});

  std::vector<const ResultTensor*> ptrs;
  for (const auto& t : tensors) ptrs.push_back(&t);
  add_per_phase(report, n, names, ptrs, spec);

  if (options.per_video) {
    std::vector<VideoCells> cells;
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t r = 0; r < R; ++r) {
        VideoCells vc{video_ids[v], input.run_ids[r], {}, {}};
        for (std::size_t k = 0; k < tensors.size(); ++k)
          for (std::size_t p = 0; p < n; ++p) vc.phase_metrics[names[k]].push_back(tensors[k].at(p, v, r));
        vc.video_metrics["accuracy"] = acc[v][r];
        cells.push_back(std::move(vc));
      }
    report.per_video = std::move(cells);
  }
  return report;
}

EvaluationReport legacy_report(const LegacyReport& legacy, const EvaluationInput& input) {
  EvaluationReport report;
  auto& p = report.protocol;
  p.mode = "legacy-bug-compatible";
  p.policy = UndefinedPolicy::ExcludeMissingPhase;
  p.order = AveragingOrder::VideoFirstThenPhase;
  p.std_mode = StdMode::Corrected;
  p.relaxed = true;
  p.omega = legacy.config.omega;
  p.matrices = legacy.config.matrix_mode;
  p.bug_compatible = legacy.config.bug_compatible;
  p.truncate = legacy.config.truncate;
  p.split = input.split;
  p.phase_count = input.phase_count;
  p.videos = input.videos.size();
  p.run_ids = input.run_ids;
  p.watermark = "legacy-bug-compatible";

  auto metric = [&](const std::string& name, const LegacyMetric& m) {
    Summary s;
    s.order = AveragingOrder::VideoFirstThenPhase;
    s.mean = m.mean;
    s.sd_phases = m.sd_phases;
    report.summary.push_back({name, "phase-wise", s});
  };
  metric("jaccard", legacy.jaccard);
  metric("precision", legacy.precision);
  metric("recall", legacy.recall);
  Summary acc;
  acc.order = AveragingOrder::VideoFirstThenPhase;
  acc.mean = legacy.accuracy_mean;
  acc.sd_videos = legacy.accuracy_sd_videos;
  report.summary.push_back({"accuracy", "video-level", acc});

  for (std::size_t q = 0; q < input.phase_count; ++q) {
    PhaseSummary ps{static_cast<PhaseId>(q), phase_name(input.phase_count, q), {}};
    auto add = [&](const std::string& name, const LegacyMetric& m) {
      Summary s;
      s.order = AveragingOrder::VideoFirstThenPhase;
      if (m.phase_means[q].is_defined()) s.mean = m.phase_means[q].value();
      ps.metrics.push_back({name, "phase-wise", s});
    };
    add("jaccard", legacy.jaccard);
    add("precision", legacy.precision);
    add("recall", legacy.recall);
    report.per_phase.push_back(std::move(ps));
  }
  return report;
}

}  // namespace phaseeval
