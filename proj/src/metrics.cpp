#include "phaseeval/metrics.hpp"

#include <cmath>
#include <string>

namespace phaseeval {

MetricCell MetricCell::defined(double value) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, "metric values must be finite");
  return MetricCell(State::Defined, value);
}

double MetricCell::value() const {
  if (state_ != State::Defined)
    throw Error(ErrorCode::InvalidArgument, "cell holds no value (" + to_string(*this) + ")");
  return value_;
}

std::string to_string(const MetricCell& cell) {
  switch (cell.state()) {
    case MetricCell::State::Defined: return std::to_string(cell.value());
    case MetricCell::State::Undefined: return "undefined";
    case MetricCell::State::Excluded: return "excluded";
  }
  return "?";
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Precision: return "precision";
    case MetricKind::Recall: return "recall";
    case MetricKind::F1: return "f1";
    case MetricKind::Jaccard: return "jaccard";
  }
  return "?";
}

std::string_view to_string(UndefinedPolicy policy) {
  switch (policy) {
    case UndefinedPolicy::ExcludeUndefined: return "exclude-undefined";
    case UndefinedPolicy::ExcludeMissingPhase: return "exclude-missing-phase";
    case UndefinedPolicy::ZeroFill: return "zero-fill";
    case UndefinedPolicy::OneFill: return "one-fill";
  }
  return "?";
}

MetricKind parse_metric_kind(std::string_view text) {
  for (auto kind : kPhaseMetricKinds)
    if (to_string(kind) == text) return kind;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(text) + "'");
}

UndefinedPolicy parse_policy(std::string_view text) {
  for (auto p : {UndefinedPolicy::ExcludeUndefined, UndefinedPolicy::ExcludeMissingPhase,
                 UndefinedPolicy::ZeroFill, UndefinedPolicy::OneFill})
    if (to_string(p) == text) return p;
  throw Error(ErrorCode::InvalidArgument, "unknown policy '" + std::string(text) + "'");
}

namespace {

MetricCell ratio(ConfusionMatrix::Count numerator, ConfusionMatrix::Count denominator) {
  if (denominator == 0) return MetricCell::undefined();
  return MetricCell::defined(static_cast<double>(numerator) / static_cast<double>(denominator));
}

}  // namespace

MetricCell phase_metric(MetricKind kind, const ConfusionMatrix& c, PhaseId p) {
  const auto [tp, fp, fn] = phase_counts(c, p);
  switch (kind) {
    case MetricKind::Precision: return ratio(tp, tp + fp);
    case MetricKind::Recall: return ratio(tp, tp + fn);
    case MetricKind::F1: return ratio(2 * tp, 2 * tp + fp + fn);
    case MetricKind::Jaccard: return ratio(tp, tp + fp + fn);
  }
  return MetricCell::undefined();
}

MetricCell accuracy(const ConfusionMatrix& c) {
  if (c.total() == 0) throw Error(ErrorCode::EmptyVideo, "accuracy of a video without frames");
  return ratio(c.trace(), c.total());
}

MetricCell balanced_accuracy(const ConfusionMatrix& c) {
  double sum = 0.0;
  std::size_t annotated = 0;
  for (PhaseId p = 0; p < c.phase_count(); ++p) {
    if (const auto frames = c.row_sum(p)) {
      sum += static_cast<double>(c.at(p, p)) / static_cast<double>(frames);
      ++annotated;
    }
  }
  if (annotated == 0) return MetricCell::excluded();
  return MetricCell::defined(sum / static_cast<double>(annotated));
}

MetricCell apply_policy(MetricCell cell, UndefinedPolicy policy, bool phase_annotated) {
  if (cell.is_excluded()) return cell;
  switch (policy) {
    case UndefinedPolicy::ExcludeUndefined:
      return cell.is_undefined() ? MetricCell::excluded() : cell;
    case UndefinedPolicy::ExcludeMissingPhase:
      return (!phase_annotated || cell.is_undefined()) ? MetricCell::excluded() : cell;
    case UndefinedPolicy::ZeroFill:
      return cell.is_undefined() ? MetricCell::defined(0.0) : cell;
    case UndefinedPolicy::OneFill:
      return cell.is_undefined() ? MetricCell::defined(1.0) : cell;
  }
  return cell;
}

void apply_policy(ResultTensor& tensor, UndefinedPolicy policy,
                  const std::vector<std::vector<bool>>& annotated) {
  if (annotated.size() != tensor.videos())
    throw Error(ErrorCode::DimensionMismatch, "presence map does not cover every video");
  for (std::size_t v = 0; v < tensor.videos(); ++v) {
    if (annotated[v].size() != tensor.phases())
      throw Error(ErrorCode::DimensionMismatch, "presence map does not cover every phase");
    for (std::size_t p = 0; p < tensor.phases(); ++p)
      for (std::size_t r = 0; r < tensor.runs(); ++r)
        tensor.at(p, v, r) = apply_policy(tensor.at(p, v, r), policy, annotated[v][p]);
  }
}

std::vector<MetricCell> phase_cells(MetricKind kind, const ConfusionMatrix& c,
                                    UndefinedPolicy policy) {
  std::vector<MetricCell> cells;
  cells.reserve(c.phase_count());
  for (PhaseId p = 0; p < c.phase_count(); ++p)
    cells.push_back(apply_policy(phase_metric(kind, c, p), policy, c.row_sum(p) > 0));
  return cells;
}

MetricCell macro_metric(MetricKind kind, const ConfusionMatrix& c, UndefinedPolicy policy) {
  double sum = 0.0;
  std::size_t kept = 0;
  for (const auto& cell : phase_cells(kind, c, policy)) {
    if (!cell.is_defined()) continue;
    sum += cell.value();
    ++kept;
  }
  if (kept == 0) return MetricCell::excluded();
  return MetricCell::defined(sum / static_cast<double>(kept));
}

double harmonic_mean(double a, double b) {
  if (a + b == 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

MetricCell macro_f1_of_means(const ConfusionMatrix& c, UndefinedPolicy policy) {
  const auto mp = macro_metric(MetricKind::Precision, c, policy);
  const auto mr = macro_metric(MetricKind::Recall, c, policy);
  if (!mp.is_defined() || !mr.is_defined()) return MetricCell::excluded();
  return MetricCell::defined(harmonic_mean(mp.value(), mr.value()));
}

double f1_upper(double mean_precision, double mean_recall) {
  if (mean_precision == 0.0 && mean_recall == 0.0)
    throw Error(ErrorCode::DegenerateMeans, "mean precision and mean recall are both zero");
  return harmonic_mean(mean_precision, mean_recall);
}

}  // namespace phaseeval
