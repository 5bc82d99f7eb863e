#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phaseeval/core.hpp"

namespace phaseeval {

/// One test video: its annotation and one prediction per run, in the order
/// of EvaluationInput::run_ids.
struct VideoEntry {
  VideoId video_id = 0;
  LabelSequence annotation;
  std::vector<LabelSequence> runs;
};

struct EvaluationInput {
  std::size_t phase_count = 0;
  std::vector<std::string> run_ids;
  std::vector<VideoEntry> videos;
  std::optional<std::string> split;
};

/// Throws on an empty input, ragged runs, length mismatches or labels
/// outside the vocabulary.
void validate_input(const EvaluationInput& input);

}  // namespace phaseeval
