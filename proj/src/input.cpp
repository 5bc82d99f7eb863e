#include "phaseeval/input.hpp"

#include <string>

namespace phaseeval {

void validate_input(const EvaluationInput& input) {
  if (input.phase_count == 0) throw Error(ErrorCode::InvalidArgument, "phase count must be positive");
  if (input.videos.empty()) throw Error(ErrorCode::InvalidArgument, "no test videos");
  if (input.run_ids.empty()) throw Error(ErrorCode::InvalidArgument, "no prediction runs");
  const PhaseSet phases(input.phase_count);
  for (const auto& v : input.videos) {
    if (v.runs.size() != input.run_ids.size())
      throw Error(ErrorCode::RaggedRuns, "video " + std::to_string(v.video_id) + " has " +
                                             std::to_string(v.runs.size()) + " runs, expected " +
                                             std::to_string(input.run_ids.size()));
    validate_sequence(v.annotation, phases);
    for (const auto& run : v.runs) {
      if (run.size() != v.annotation.size()) throw LengthMismatchError(v.annotation.size(), run.size());
      validate_sequence(run, phases);
    }
  }
}

}  // namespace phaseeval
