#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phaseeval/error.hpp"

namespace phaseeval {

using PhaseId = std::uint32_t;
using VideoId = int;

/// The phase vocabulary. Phase ids are 0..count-1.
struct PhaseSet {
  std::size_t count = 0;
  std::vector<std::string> names;  // empty, or one name per phase id

  PhaseSet() = default;
  explicit PhaseSet(std::size_t count, std::vector<std::string> names = {});

  bool contains(PhaseId p) const noexcept { return p < count; }

  /// The seven phases of laparoscopic cholecystectomy in Cholec80.
  static PhaseSet cholec80();
};

/// Per-frame phase labels of one video, sampled every `resolution_seconds`.
struct LabelSequence {
  std::vector<PhaseId> labels;
  double resolution_seconds = 1.0;

  LabelSequence() = default;
  explicit LabelSequence(std::vector<PhaseId> labels, double resolution_seconds = 1.0)
      : labels(std::move(labels)), resolution_seconds(resolution_seconds) {}

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const PhaseId> view() const noexcept { return labels; }
  PhaseId operator[](std::size_t t) const { return labels[t]; }
  bool operator==(const LabelSequence&) const = default;
};

/// Throws EmptySequence or OutOfRangeLabelError.
void validate_sequence(const LabelSequence& seq, const PhaseSet& phases);

/// A maximal run of one phase; `start` and `end` are inclusive frame indices.
struct Segment {
  PhaseId phase = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const Segment&) const = default;
};

std::vector<Segment> extract_segments(std::span<const PhaseId> labels);
inline std::vector<Segment> extract_segments(const LabelSequence& seq) {
  return extract_segments(seq.view());
}

/// Directed graph of which phase may immediately follow which.
class WorkflowGraph {
 public:
  using Edge = std::pair<PhaseId, PhaseId>;

  WorkflowGraph(std::size_t phase_count, std::set<Edge> edges);

  std::size_t phase_count() const noexcept { return phase_count_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  bool contains(PhaseId from, PhaseId to) const { return edges_.count({from, to}) > 0; }
  std::set<PhaseId> successors(PhaseId p) const;
  std::set<PhaseId> predecessors(PhaseId p) const;

  /// 0 -> 1 -> ... -> n-1, used for vocabularies without a published workflow.
  static WorkflowGraph linear(std::size_t phase_count);

 private:
  std::size_t phase_count_;
  std::set<Edge> edges_;
};

WorkflowGraph cholec80_graph();

struct Fold {
  std::vector<VideoId> train;
  std::vector<VideoId> validation;
};

/// A named train / validation / test partition of 1-based video ids.
/// Cross-validated protocols also list their folds; `train` and `validation`
/// then mirror fold 0.
struct SplitDefinition {
  std::string name;
  std::vector<VideoId> train;
  std::vector<VideoId> validation;
  std::vector<VideoId> test;
  std::vector<Fold> folds;
};

/// Throws Error(UnknownSplit) for unregistered names.
SplitDefinition resolve_split(std::string_view name);
std::vector<std::string> registered_splits();

}  // namespace phaseeval
