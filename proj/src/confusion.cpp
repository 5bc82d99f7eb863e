#include "phaseeval/confusion.hpp"

namespace phaseeval {

ConfusionMatrix::Count ConfusionMatrix::row_sum(PhaseId p) const {
  Count s = 0;
  for (std::size_t q = 0; q < n_; ++q) s += counts_[p * n_ + q];
  return s;
}

ConfusionMatrix::Count ConfusionMatrix::column_sum(PhaseId p) const {
  Count s = 0;
  for (std::size_t q = 0; q < n_; ++q) s += counts_[q * n_ + p];
  return s;
}

ConfusionMatrix::Count ConfusionMatrix::trace() const {
  Count s = 0;
  for (std::size_t p = 0; p < n_; ++p) s += counts_[p * n_ + p];
  return s;
}

ConfusionMatrix confusion_of(std::span<const PhaseId> annotation,
                             std::span<const PhaseId> prediction, std::size_t phase_count) {
  if (annotation.size() != prediction.size())
    throw LengthMismatchError(annotation.size(), prediction.size());
  ConfusionMatrix c(phase_count);
  for (std::size_t t = 0; t < annotation.size(); ++t) {
    if (annotation[t] >= phase_count) throw OutOfRangeLabelError(t, annotation[t], phase_count);
    if (prediction[t] >= phase_count) throw OutOfRangeLabelError(t, prediction[t], phase_count);
    c.add(annotation[t], prediction[t]);
  }
  return c;
}

PhaseCounts phase_counts(const ConfusionMatrix& c, PhaseId p) {
  if (p >= c.phase_count())
    throw Error(ErrorCode::InvalidArgument, "phase " + std::to_string(p) + " out of range");
  PhaseCounts out;
  out.tp = c.at(p, p);
  out.fn = c.row_sum(p) - out.tp;
  out.fp = c.column_sum(p) - out.tp;
  return out;
}

ConfusionMatrix sum_confusions(std::span<const ConfusionMatrix> matrices) {
  if (matrices.empty()) return ConfusionMatrix();
  const std::size_t n = matrices.front().phase_count();
  ConfusionMatrix sum(n);
  for (const auto& m : matrices) {
    if (m.phase_count() != n)
      throw Error(ErrorCode::DimensionMismatch,
                  "cannot add a " + std::to_string(m.phase_count()) + "-phase matrix to a " +
                      std::to_string(n) + "-phase matrix");
    for (PhaseId p = 0; p < n; ++p)
      for (PhaseId q = 0; q < n; ++q)
        if (auto k = m.at(p, q)) sum.add(p, q, k);
  }
  return sum;
}

}  // namespace phaseeval
