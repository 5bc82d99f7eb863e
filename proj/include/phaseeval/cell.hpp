#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "phaseeval/core.hpp"

namespace phaseeval {

/// Tri-state metric value: a number, a division by zero, or a value removed
/// by an undefined-value policy. All aggregation works on cells.
class MetricCell {
 public:
  enum class State { Defined, Undefined, Excluded };

  /// Undefined.
  MetricCell() noexcept = default;

  static MetricCell defined(double value);
  static MetricCell undefined() noexcept { return MetricCell(State::Undefined, 0.0); }
  static MetricCell excluded() noexcept { return MetricCell(State::Excluded, 0.0); }

  State state() const noexcept { return state_; }
  bool is_defined() const noexcept { return state_ == State::Defined; }
  bool is_undefined() const noexcept { return state_ == State::Undefined; }
  bool is_excluded() const noexcept { return state_ == State::Excluded; }

  /// Throws InvalidArgument unless Defined.
  double value() const;

  bool operator==(const MetricCell&) const = default;

 private:
  MetricCell(State s, double v) noexcept : state_(s), value_(v) {}
  State state_ = State::Undefined;
  double value_ = 0.0;
};

std::string to_string(const MetricCell& cell);

/// phases x videos x runs grid of cells with axis labels.
class ResultTensor {
 public:
  ResultTensor() = default;
  ResultTensor(std::vector<PhaseId> phase_ids, std::vector<VideoId> video_ids,
               std::vector<std::string> run_ids,
               MetricCell fill = MetricCell::undefined());

  std::size_t phases() const noexcept { return phase_ids_.size(); }
  std::size_t videos() const noexcept { return video_ids_.size(); }
  std::size_t runs() const noexcept { return run_ids_.size(); }

  const std::vector<PhaseId>& phase_ids() const noexcept { return phase_ids_; }
  const std::vector<VideoId>& video_ids() const noexcept { return video_ids_; }
  const std::vector<std::string>& run_ids() const noexcept { return run_ids_; }

  MetricCell& at(std::size_t phase, std::size_t video, std::size_t run) {
    return cells_[index(phase, video, run)];
  }
  const MetricCell& at(std::size_t phase, std::size_t video, std::size_t run) const {
    return cells_[index(phase, video, run)];
  }

  /// Cells in canonical phase -> video -> run order.
  const std::vector<MetricCell>& cells() const noexcept { return cells_; }

  /// The 1 x videos x runs slice of one phase (by position).
  ResultTensor phase_slice(std::size_t phase) const;

 private:
  std::size_t index(std::size_t p, std::size_t v, std::size_t r) const;

  std::vector<PhaseId> phase_ids_;
  std::vector<VideoId> video_ids_;
  std::vector<std::string> run_ids_;
  std::vector<MetricCell> cells_;
};

}  // namespace phaseeval
