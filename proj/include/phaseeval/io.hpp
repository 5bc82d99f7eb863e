#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phaseeval/core.hpp"
#include "phaseeval/input.hpp"

namespace phaseeval {

/// One non-negative integer per line; a final newline is optional, blank
/// interior lines are rejected. Throws ParseError, EmptyFile or MissingFile.
LabelSequence parse_labels(const std::string& text, const std::string& origin = "<memory>");
LabelSequence load_labels(const std::string& path);

std::string format_labels(const LabelSequence& seq);
void write_labels(const std::string& path, const LabelSequence& seq);

struct ManifestVideo {
  VideoId id = 0;
  std::string annotation;                         // absolute or manifest-relative
  std::map<std::string, std::string> predictions;  // run id -> path
};

/// Paths are resolved against the manifest's directory on load.
struct RunManifest {
  std::size_t phase_count = 0;
  std::optional<std::string> split;
  std::vector<std::string> run_ids;  // sorted
  std::vector<ManifestVideo> videos;
};

/// Throws SchemaError, MissingFile or RaggedRuns.
RunManifest load_manifest(const std::string& path);
RunManifest parse_manifest(const std::string& text, const std::string& base_dir,
                           const std::string& origin = "<memory>");

/// Writes paths as given (callers pass manifest-relative ones).
std::string format_manifest(const RunManifest& manifest);

/// Reads every label file, `jobs` videos at a time, and validates the result.
EvaluationInput load_input(const RunManifest& manifest, std::size_t jobs = 1);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace phaseeval
