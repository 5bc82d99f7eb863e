#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phaseeval {

enum class ErrorCode {
  OutOfRangeLabel,
  EmptySequence,
  UnknownSplit,
  LengthMismatch,
  DimensionMismatch,
  EmptyVideo,
  DegenerateMeans,
  NoDefinedCells,
  InsufficientPoints,
  SegmentShorterThanOmega,
  SchemaError,
  DuplicateEntry,
  EmptyLedger,
  ParseError,
  EmptyFile,
  MissingFile,
  RaggedRuns,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Base of every error raised by the library. `code()` identifies the
/// failure class; the message carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class OutOfRangeLabelError : public Error {
 public:
  OutOfRangeLabelError(std::size_t position, std::uint32_t value, std::size_t phase_count)
      : Error(ErrorCode::OutOfRangeLabel,
              "label " + std::to_string(value) + " at position " + std::to_string(position) +
                  " is not below phase count " + std::to_string(phase_count)),
        position(position),
        value(value) {}

  std::size_t position;
  std::uint32_t value;
};

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t annotation_length, std::size_t prediction_length)
      : Error(ErrorCode::LengthMismatch,
              "annotation has " + std::to_string(annotation_length) + " frames, prediction has " +
                  std::to_string(prediction_length)),
        annotation_length(annotation_length),
        prediction_length(prediction_length) {}

  std::size_t annotation_length;
  std::size_t prediction_length;
};

class ParseError : public Error {
 public:
  ParseError(std::string path, std::size_t line, std::string content)
      : Error(ErrorCode::ParseError,
              path + ":" + std::to_string(line) + ": cannot parse '" + content + "'"),
        line(line),
        content(std::move(content)) {}

  std::size_t line;  // 1-based
  std::string content;
};

}  // namespace phaseeval
