#pragma once

#include <cstddef>

#include "phaseeval/input.hpp"
#include "phaseeval/relaxed.hpp"
#include "phaseeval/report.hpp"

namespace phaseeval {

struct EvaluationOptions {
  UndefinedPolicy policy = UndefinedPolicy::ExcludeMissingPhase;
  SummarySpec summary;
  std::size_t jobs = 1;
  bool per_video = false;
};

/// The Cholec80 workflow for seven phases, a linear chain otherwise.
WorkflowGraph default_graph(std::size_t phase_count);

/// Regular metrics. Phase-wise precision, recall, f1 and jaccard report M,
/// SD_V, SD_P and SD_R; video-level accuracy and macro aggregates M, SD_V and
/// SD_R; f1_upper is the harmonic mean of M(precision) and M(recall) with its
/// spread over runs; frame-wise metrics are computed per run on the summed
/// confusion matrix. A statistic without a defined cell is reported as n/a.
EvaluationReport evaluate(const EvaluationInput& input, const EvaluationOptions& options);

/// Relaxed jaccard, precision, recall and accuracy. With
/// config.bug_compatible the historical script is replicated instead
/// (see legacy_pipeline) and the report is watermarked.
EvaluationReport evaluate_relaxed(const EvaluationInput& input, const RelaxedConfig& config,
                                  const EvaluationOptions& options, const WorkflowGraph& graph);

EvaluationReport legacy_report(const LegacyReport& legacy, const EvaluationInput& input);

}  // namespace phaseeval
