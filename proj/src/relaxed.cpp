#include "phaseeval/relaxed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phaseeval/aggregate.hpp"

namespace phaseeval {

std::string_view to_string(MatrixMode mode) {
  return mode == MatrixMode::Legacy ? "legacy" : "graph";
}

MatrixMode parse_matrix_mode(std::string_view text) {
  if (text == "legacy") return MatrixMode::Legacy;
  if (text == "graph") return MatrixMode::GraphDerived;
  throw Error(ErrorCode::InvalidArgument, "unknown matrix mode '" + std::string(text) + "'");
}

std::string_view to_string(RelaxedKind kind) {
  switch (kind) {
    case RelaxedKind::Jaccard: return "jaccard";
    case RelaxedKind::Precision: return "precision";
    case RelaxedKind::Recall: return "recall";
  }
  return "?";
}

RelaxMatrices build_matrices(const WorkflowGraph& graph, MatrixMode mode) {
  const std::size_t n = graph.phase_count();
  RelaxMatrices m{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)),
                  std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  for (const auto& [from, to] : graph.edges()) {
    m.start[to][from] = true;
    m.end[from][to] = true;
  }
  if (mode == MatrixMode::Legacy) {
    auto clear = [n](std::vector<std::vector<bool>>& grid, std::size_t q, std::size_t k) {
      if (q < n && k < n) grid[q][k] = false;
    };
    clear(m.start, 4, 5);
    clear(m.start, 5, 6);
    clear(m.end, 5, 4);
    clear(m.end, 6, 5);
  }
  return m;
}

namespace {

void check_pair(std::span<const PhaseId> annotation, std::span<const PhaseId> prediction,
                const RelaxMatrices& matrices) {
  if (annotation.size() != prediction.size())
    throw LengthMismatchError(annotation.size(), prediction.size());
  for (std::size_t t = 0; t < annotation.size(); ++t) {
    if (annotation[t] >= matrices.n) throw OutOfRangeLabelError(t, annotation[t], matrices.n);
    if (prediction[t] >= matrices.n) throw OutOfRangeLabelError(t, prediction[t], matrices.n);
  }
}

}  // namespace

RelaxFlags relax_flags(std::span<const PhaseId> annotation, std::span<const PhaseId> prediction,
                       std::size_t omega, const RelaxMatrices& matrices) {
  check_pair(annotation, prediction, matrices);
  RelaxFlags flags(annotation.size(), false);
  for (const auto& seg : extract_segments(annotation)) {
    const std::size_t len = seg.length();
    const std::size_t w = std::min(omega, len);
    for (std::size_t t = seg.start; t <= seg.end; ++t) {
      const PhaseId pred = prediction[t];
      const std::size_t offset = t - seg.start;
      const bool in_first = offset < w;
      const bool in_last = offset >= len - w;
      flags[t] = pred == seg.phase || (in_first && matrices.start[seg.phase][pred]) ||
                 (in_last && matrices.end[seg.phase][pred]);
    }
  }
  return flags;
}

RelaxFlags relax_flags_legacy(std::span<const PhaseId> annotation,
                              std::span<const PhaseId> prediction, std::size_t omega,
                              const RelaxMatrices& matrices) {
  check_pair(annotation, prediction, matrices);
  RelaxFlags flags(annotation.size(), false);
  for (const auto& seg : extract_segments(annotation)) {
    const std::size_t len = seg.length();
    if (len < omega)
      throw Error(ErrorCode::SegmentShorterThanOmega,
                  "segment of phase " + std::to_string(seg.phase) + " at frames " +
                      std::to_string(seg.start) + ".." + std::to_string(seg.end) + " has " +
                      std::to_string(len) + " frames, omega is " + std::to_string(omega));
    // Predicted phase per frame, or nullopt once the entry has been cleared.
    std::vector<std::optional<PhaseId>> diff(len);
    for (std::size_t j = 0; j < len; ++j) {
      const PhaseId pred = prediction[seg.start + j];
      if (pred != seg.phase) diff[j] = pred;
    }
    for (std::size_t j = 0; j < omega; ++j)
      if (diff[j] && matrices.start[seg.phase][*diff[j]]) diff[j].reset();
    std::vector<bool> end_mask(omega);
    for (std::size_t j = 0; j < omega; ++j) {
      const auto& entry = diff[len - omega + j];
      end_mask[j] = entry && matrices.end[seg.phase][*entry];
    }
    for (std::size_t j = 0; j < omega; ++j)
      if (end_mask[j]) diff[j].reset();
    for (std::size_t j = 0; j < len; ++j) flags[seg.start + j] = !diff[j];
  }
  return flags;
}

RelaxFlags compute_flags(std::span<const PhaseId> annotation, std::span<const PhaseId> prediction,
                         const RelaxedConfig& config, const RelaxMatrices& matrices) {
  if (config.bug_compatible) return relax_flags_legacy(annotation, prediction, config.omega, matrices);
  return relax_flags(annotation, prediction, config.omega, matrices);
}

RelaxedCounts relaxed_counts(std::span<const PhaseId> annotation,
                             std::span<const PhaseId> prediction, const RelaxFlags& flags,
                             PhaseId p) {
  if (annotation.size() != prediction.size())
    throw LengthMismatchError(annotation.size(), prediction.size());
  if (flags.size() != annotation.size())
    throw Error(ErrorCode::DimensionMismatch, "flags do not cover the sequence");
  RelaxedCounts c;
  for (std::size_t t = 0; t < annotation.size(); ++t) {
    const bool annotated = annotation[t] == p;
    const bool predicted = prediction[t] == p;
    if (annotated) ++c.annot_count;
    if (predicted) ++c.pred_count;
    if (annotated || predicted) {
      ++c.union_count;
      if (flags[t]) ++c.r_tp;
    }
  }
  return c;
}

MetricCell relaxed_metric(RelaxedKind kind, const RelaxedCounts& counts, bool truncate) {
  std::size_t den = 0;
  switch (kind) {
    case RelaxedKind::Jaccard: den = counts.union_count; break;
    case RelaxedKind::Precision: den = counts.pred_count; break;
    case RelaxedKind::Recall: den = counts.annot_count; break;
  }
  if (den == 0) return MetricCell::undefined();
  double v = static_cast<double>(counts.r_tp) / static_cast<double>(den);
  if (truncate) v = std::min(v, 1.0);
  return MetricCell::defined(v);
}

MetricCell relaxed_accuracy(const RelaxFlags& flags) {
  if (flags.empty()) throw Error(ErrorCode::EmptyVideo, "relaxed accuracy of a video without frames");
  const auto hits = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
  return MetricCell::defined(static_cast<double>(hits) / static_cast<double>(flags.size()));
}

namespace {

// The original tooling reports a spread of 0 for a single sample.
double spread_or_zero(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  return sample_std(values, StdMode::Corrected);
}

}  // namespace

LegacyReport legacy_pipeline(const EvaluationInput& input, const RelaxedConfig& config,
                             const WorkflowGraph& graph) {
  validate_input(input);
  if (graph.phase_count() != input.phase_count)
    throw Error(ErrorCode::DimensionMismatch, "workflow graph does not match the phase count");
  const auto matrices = build_matrices(graph, config.matrix_mode);
  const std::size_t n = input.phase_count;
  const std::size_t V = input.videos.size();
  const std::size_t R = input.run_ids.size();

  std::vector<PhaseId> phase_ids(n);
  for (std::size_t p = 0; p < n; ++p) phase_ids[p] = static_cast<PhaseId>(p);
  std::vector<VideoId> video_ids;
  for (const auto& v : input.videos) video_ids.push_back(v.video_id);

  ResultTensor tensors[3] = {ResultTensor(phase_ids, video_ids, input.run_ids),
                             ResultTensor(phase_ids, video_ids, input.run_ids),
                             ResultTensor(phase_ids, video_ids, input.run_ids)};
  ResultTensor acc({0}, video_ids, input.run_ids);

  for (std::size_t v = 0; v < V; ++v) {
    const auto& entry = input.videos[v];
    const auto y = entry.annotation.view();
    for (std::size_t r = 0; r < R; ++r) {
      const auto yhat = entry.runs[r].view();
      const auto flags = compute_flags(y, yhat, config, matrices);
      acc.at(0, v, r) = relaxed_accuracy(flags);
      for (std::size_t p = 0; p < n; ++p) {
        const auto counts = relaxed_counts(y, yhat, flags, static_cast<PhaseId>(p));
        for (std::size_t k = 0; k < 3; ++k) {
          auto cell = relaxed_metric(kRelaxedKinds[k], counts, config.truncate);
          if (counts.annot_count == 0 || !cell.is_defined()) cell = MetricCell::excluded();
          tensors[k].at(p, v, r) = cell;
        }
      }
    }
  }

  auto summarize_metric = [&](const ResultTensor& t) {
    LegacyMetric m;
    std::vector<double> defined;
    for (std::size_t p = 0; p < n; ++p) {
      const auto slice = t.phase_slice(p);
      m.phase_means.push_back(mean_cells(slice.cells()));
      if (m.phase_means.back().is_defined()) defined.push_back(m.phase_means.back().value());
    }
    if (defined.empty()) throw Error(ErrorCode::NoDefinedCells, "no phase is annotated in the test set");
    double sum = 0.0;
    for (double x : defined) sum += x;
    m.mean = sum / static_cast<double>(defined.size());
    m.sd_phases = spread_or_zero(defined);
    return m;
  };

  LegacyReport report;
  report.config = config;
  report.jaccard = summarize_metric(tensors[0]);
  report.precision = summarize_metric(tensors[1]);
  report.recall = summarize_metric(tensors[2]);
  report.accuracy_mean = mean_cells(acc.cells()).value();
  report.accuracy_sd_videos = spread_or_zero(collapse(acc, Axis::Videos));
  return report;
}

}  // namespace phaseeval
