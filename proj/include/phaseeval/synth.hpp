#pragma once

#include <cstdint>
#include <string>

#include "phaseeval/input.hpp"

namespace phaseeval {

/// Annotations are random walks on the workflow graph with segment lengths
/// drawn from [min_length, max_length]. Predictions shift every boundary by
/// up to `boundary_shift` frames (never more than half of an adjacent
/// segment) and then replace each frame by a different phase with
/// probability `flip_rate`.
struct SynthConfig {
  std::size_t phase_count = 7;
  std::size_t videos = 10;
  std::size_t runs = 1;
  std::size_t boundary_shift = 0;
  double flip_rate = 0.0;
  std::size_t min_length = 20;
  std::size_t max_length = 60;
  std::size_t max_segments = 12;
  std::uint64_t seed = 0;
  VideoId first_video_id = 1;
};

/// Throws InvalidArgument on inconsistent parameters.
void validate_config(const SynthConfig& config);

/// Deterministic for a given config on every platform.
EvaluationInput synthesize(const SynthConfig& config);

/// Writes annotations/videoN.txt, predictions/<run>/videoN.txt and
/// manifest.json below `out_dir`; returns the manifest path.
std::string write_corpus(const EvaluationInput& input, const std::string& out_dir);

}  // namespace phaseeval
