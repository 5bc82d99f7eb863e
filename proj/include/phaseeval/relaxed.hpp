#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "phaseeval/cell.hpp"
#include "phaseeval/core.hpp"
#include "phaseeval/input.hpp"

namespace phaseeval {

/// start[q][k] = 1 accepts prediction k in the first frames of a segment
/// annotated q; end[q][k] likewise for its last frames.
struct RelaxMatrices {
  std::size_t n = 0;
  std::vector<std::vector<bool>> start;
  std::vector<std::vector<bool>> end;
};

/// GraphDerived accepts every predecessor at a segment start and every
/// successor at its end. Legacy drops the four transitions the historical
/// scripts never accepted: start (4 <- 5), start (5 <- 6), end (5 -> 4) and
/// end (6 -> 5).
enum class MatrixMode { Legacy, GraphDerived };

std::string_view to_string(MatrixMode mode);
MatrixMode parse_matrix_mode(std::string_view text);

RelaxMatrices build_matrices(const WorkflowGraph& graph, MatrixMode mode);

struct RelaxedConfig {
  std::size_t omega = 10;
  MatrixMode matrix_mode = MatrixMode::Legacy;
  bool bug_compatible = false;
  bool truncate = false;
};

using RelaxFlags = std::vector<bool>;

/// Frame t is correct when the prediction matches, or t is within the first
/// omega frames of its annotated segment q and start[q][pred] holds, or within
/// the last omega frames and end[q][pred] holds. Windows are clamped to the
/// segment and may overlap.
RelaxFlags relax_flags(std::span<const PhaseId> annotation, std::span<const PhaseId> prediction,
                       std::size_t omega, const RelaxMatrices& matrices);

/// Replica of the historical script. Per segment it takes d = pred - annot,
/// clears start-window entries accepted by the start matrix, then computes the
/// end-rule mask over the last omega entries and clears the FIRST omega
/// entries wherever that mask is set. Correct iff d == 0 afterwards.
/// Throws SegmentShorterThanOmega when a segment is shorter than omega.
RelaxFlags relax_flags_legacy(std::span<const PhaseId> annotation,
                              std::span<const PhaseId> prediction, std::size_t omega,
                              const RelaxMatrices& matrices);

/// Dispatches on config.bug_compatible.
RelaxFlags compute_flags(std::span<const PhaseId> annotation, std::span<const PhaseId> prediction,
                         const RelaxedConfig& config, const RelaxMatrices& matrices);

struct RelaxedCounts {
  std::size_t r_tp = 0;
  std::size_t union_count = 0;
  std::size_t pred_count = 0;
  std::size_t annot_count = 0;
  bool operator==(const RelaxedCounts&) const = default;
};

RelaxedCounts relaxed_counts(std::span<const PhaseId> annotation,
                             std::span<const PhaseId> prediction, const RelaxFlags& flags,
                             PhaseId p);

enum class RelaxedKind { Jaccard, Precision, Recall };

inline constexpr RelaxedKind kRelaxedKinds[] = {RelaxedKind::Jaccard, RelaxedKind::Precision,
                                                RelaxedKind::Recall};

std::string_view to_string(RelaxedKind kind);

/// Undefined on a zero denominator; Defined values are capped at 1 when
/// `truncate` is set.
MetricCell relaxed_metric(RelaxedKind kind, const RelaxedCounts& counts, bool truncate);

/// Fraction of true flags. Throws EmptyVideo on an empty sequence.
MetricCell relaxed_accuracy(const RelaxFlags& flags);

/// One relaxed metric as the script summarizes it: per-phase means over
/// (videos, runs), their mean, and the corrected std over phases.
struct LegacyMetric {
  std::vector<MetricCell> phase_means;
  double mean = 0.0;
  double sd_phases = 0.0;
};

struct LegacyReport {
  LegacyMetric jaccard;
  LegacyMetric precision;
  LegacyMetric recall;
  double accuracy_mean = 0.0;
  double accuracy_sd_videos = 0.0;
  RelaxedConfig config;
};

/// Full replica of the historical relaxed evaluation. Phases missing from a
/// video's annotation are excluded; the spread of a single sample is 0, as in
/// the original tooling. `config` is used as given, so the pipeline can also
/// be run with corrected flags for comparison.
LegacyReport legacy_pipeline(const EvaluationInput& input, const RelaxedConfig& config,
                             const WorkflowGraph& graph);

}  // namespace phaseeval
