#include "phaseeval/core.hpp"

#include <algorithm>
#include <numeric>

namespace phaseeval {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRangeLabel: return "OutOfRangeLabel";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::UnknownSplit: return "UnknownSplit";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyVideo: return "EmptyVideo";
    case ErrorCode::DegenerateMeans: return "DegenerateMeans";
    case ErrorCode::NoDefinedCells: return "NoDefinedCells";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::SegmentShorterThanOmega: return "SegmentShorterThanOmega";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::EmptyLedger: return "EmptyLedger";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::RaggedRuns: return "RaggedRuns";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

PhaseSet::PhaseSet(std::size_t count, std::vector<std::string> names)
    : count(count), names(std::move(names)) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "phase count must be positive");
  if (!this->names.empty() && this->names.size() != count)
    throw Error(ErrorCode::InvalidArgument, "phase names do not match phase count");
}

PhaseSet PhaseSet::cholec80() {
  return PhaseSet(7, {"Preparation", "Calot triangle dissection", "Clipping and cutting",
                      "Gallbladder dissection", "Gallbladder packaging",
                      "Cleaning and coagulation", "Gallbladder retraction"});
}

void validate_sequence(const LabelSequence& seq, const PhaseSet& phases) {
  if (seq.labels.empty()) throw Error(ErrorCode::EmptySequence, "label sequence is empty");
  if (!(seq.resolution_seconds > 0.0))
    throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  for (std::size_t t = 0; t < seq.labels.size(); ++t) {
    if (!phases.contains(seq.labels[t]))
      throw OutOfRangeLabelError(t, seq.labels[t], phases.count);
  }
}

std::vector<Segment> extract_segments(std::span<const PhaseId> labels) {
  std::vector<Segment> segments;
  std::size_t start = 0;
  for (std::size_t t = 1; t <= labels.size(); ++t) {
    if (t == labels.size() || labels[t] != labels[start]) {
      segments.push_back({labels[start], start, t - 1});
      start = t;
    }
  }
  return segments;
}

WorkflowGraph::WorkflowGraph(std::size_t phase_count, std::set<Edge> edges)
    : phase_count_(phase_count), edges_(std::move(edges)) {
  for (const auto& [from, to] : edges_) {
    if (from >= phase_count_ || to >= phase_count_)
      throw Error(ErrorCode::InvalidArgument, "workflow edge references an unknown phase");
    if (from == to) throw Error(ErrorCode::InvalidArgument, "workflow graph has a self-loop");
  }
}

std::set<PhaseId> WorkflowGraph::successors(PhaseId p) const {
  std::set<PhaseId> out;
  for (const auto& [from, to] : edges_)
    if (from == p) out.insert(to);
  return out;
}

std::set<PhaseId> WorkflowGraph::predecessors(PhaseId p) const {
  std::set<PhaseId> out;
  for (const auto& [from, to] : edges_)
    if (to == p) out.insert(from);
  return out;
}

WorkflowGraph WorkflowGraph::linear(std::size_t phase_count) {
  std::set<Edge> edges;
  for (PhaseId p = 0; p + 1 < phase_count; ++p) edges.insert({p, p + 1});
  return WorkflowGraph(phase_count, std::move(edges));
}

WorkflowGraph cholec80_graph() {
  return WorkflowGraph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5},
                           {4, 5}, {4, 6}, {5, 4}, {5, 6}, {6, 5}});
}

namespace {

std::vector<VideoId> id_range(VideoId first, VideoId last) {
  std::vector<VideoId> ids(static_cast<std::size_t>(std::max(0, last - first + 1)));
  std::iota(ids.begin(), ids.end(), first);
  return ids;
}

SplitDefinition contiguous(std::string name, int train, int validation, int test_first) {
  SplitDefinition split;
  split.name = std::move(name);
  split.train = id_range(1, train);
  split.validation = id_range(train + 1, train + validation);
  split.test = id_range(test_first, 80);
  return split;
}

SplitDefinition cross_validated_60_20() {
  SplitDefinition split;
  split.name = "48:12:20-cv";
  split.test = id_range(61, 80);
  for (int k = 0; k < 5; ++k) {
    Fold fold;
    fold.validation = id_range(1 + 12 * k, 12 * (k + 1));
    for (VideoId v = 1; v <= 60; ++v)
      if (v < 1 + 12 * k || v > 12 * (k + 1)) fold.train.push_back(v);
    split.folds.push_back(std::move(fold));
  }
  split.train = split.folds.front().train;
  split.validation = split.folds.front().validation;
  return split;
}

}  // namespace

std::vector<std::string> registered_splits() {
  return {"32:8:40", "40:40", "40:8:32", "40:20:20", "60:20", "48:12:20-cv"};
}

SplitDefinition resolve_split(std::string_view name) {
  if (name == "32:8:40") return contiguous("32:8:40", 32, 8, 41);
  if (name == "40:40") return contiguous("40:40", 40, 0, 41);
  if (name == "40:8:32") return contiguous("40:8:32", 40, 8, 49);
  if (name == "40:20:20") return contiguous("40:20:20", 40, 20, 61);
  if (name == "60:20") return contiguous("60:20", 60, 0, 61);
  if (name == "48:12:20-cv") return cross_validated_60_20();
  throw Error(ErrorCode::UnknownSplit, "no split registered as '" + std::string(name) + "'");
}

}  // namespace phaseeval
