#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "phaseeval/core.hpp"

namespace phaseeval {

/// |P| x |P| frame counts: entry (p, q) counts frames annotated p and
/// predicted q. All counting is integer; ratios are formed at metric time.
class ConfusionMatrix {
 public:
  using Count = std::uint64_t;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t phase_count)
      : n_(phase_count), counts_(phase_count * phase_count, 0) {}

  std::size_t phase_count() const noexcept { return n_; }
  Count total() const noexcept { return total_; }

  Count at(PhaseId annotated, PhaseId predicted) const { return counts_[annotated * n_ + predicted]; }
  void add(PhaseId annotated, PhaseId predicted, Count k = 1) {
    counts_[annotated * n_ + predicted] += k;
    total_ += k;
  }

  /// Number of frames annotated as p.
  Count row_sum(PhaseId p) const;
  /// Number of frames predicted as p.
  Count column_sum(PhaseId p) const;
  Count trace() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Count> counts_;
  Count total_ = 0;
};

struct PhaseCounts {
  ConfusionMatrix::Count tp = 0;
  ConfusionMatrix::Count fp = 0;
  ConfusionMatrix::Count fn = 0;
  bool operator==(const PhaseCounts&) const = default;
};

/// Throws LengthMismatchError when the sequences differ in length and
/// OutOfRangeLabelError when a label is not below `phase_count`.
ConfusionMatrix confusion_of(std::span<const PhaseId> annotation,
                             std::span<const PhaseId> prediction, std::size_t phase_count);
inline ConfusionMatrix confusion_of(const LabelSequence& annotation,
                                    const LabelSequence& prediction, std::size_t phase_count) {
  return confusion_of(annotation.view(), prediction.view(), phase_count);
}

PhaseCounts phase_counts(const ConfusionMatrix& c, PhaseId p);

/// Element-wise sum, in the given order. Throws DimensionMismatch.
ConfusionMatrix sum_confusions(std::span<const ConfusionMatrix> matrices);

}  // namespace phaseeval
