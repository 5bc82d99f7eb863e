#include "phaseeval/aggregate.hpp"

#include <cmath>
#include <string>

namespace phaseeval {

ResultTensor::ResultTensor(std::vector<PhaseId> phase_ids, std::vector<VideoId> video_ids,
                           std::vector<std::string> run_ids, MetricCell fill)
    : phase_ids_(std::move(phase_ids)),
      video_ids_(std::move(video_ids)),
      run_ids_(std::move(run_ids)),
      cells_(phase_ids_.size() * video_ids_.size() * run_ids_.size(), fill) {
  if (run_ids_.empty()) throw Error(ErrorCode::InvalidArgument, "a result tensor needs at least one run");
}

std::size_t ResultTensor::index(std::size_t p, std::size_t v, std::size_t r) const {
  if (p >= phases() || v >= videos() || r >= runs())
    throw Error(ErrorCode::InvalidArgument, "result tensor index out of range");
  return (p * videos() + v) * runs() + r;
}

ResultTensor ResultTensor::phase_slice(std::size_t phase) const {
  ResultTensor slice({phase_ids_.at(phase)}, video_ids_, run_ids_);
  for (std::size_t v = 0; v < videos(); ++v)
    for (std::size_t r = 0; r < runs(); ++r) slice.at(0, v, r) = at(phase, v, r);
  return slice;
}

std::string_view to_string(StdMode mode) {
  return mode == StdMode::Corrected ? "corrected" : "uncorrected";
}

std::string_view to_string(AveragingOrder order) {
  switch (order) {
    case AveragingOrder::Flat: return "flat";
    case AveragingOrder::PhaseFirstThenVideo: return "phase-first";
    case AveragingOrder::VideoFirstThenPhase: return "video-first";
  }
  return "?";
}

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::Videos: return "videos";
    case Axis::Phases: return "phases";
    case Axis::Runs: return "runs";
  }
  return "?";
}

StdMode parse_std_mode(std::string_view text) {
  if (text == "corrected") return StdMode::Corrected;
  if (text == "uncorrected") return StdMode::Uncorrected;
  throw Error(ErrorCode::InvalidArgument, "unknown std mode '" + std::string(text) + "'");
}

AveragingOrder parse_order(std::string_view text) {
  for (auto o : {AveragingOrder::Flat, AveragingOrder::PhaseFirstThenVideo,
                 AveragingOrder::VideoFirstThenPhase})
    if (to_string(o) == text) return o;
  throw Error(ErrorCode::InvalidArgument, "unknown averaging order '" + std::string(text) + "'");
}

MetricCell mean_cells(std::span<const MetricCell> cells) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : cells) {
    if (!c.is_defined()) continue;
    sum += c.value();
    ++n;
  }
  if (n == 0) return MetricCell::excluded();
  return MetricCell::defined(sum / static_cast<double>(n));
}

namespace {

// Gathers, for each position along `axis`, the cells of the other two axes in
// canonical order and reduces them with mean_cells.
std::vector<MetricCell> collapse_cells(const ResultTensor& t, Axis axis) {
  std::vector<MetricCell> out;
  std::vector<MetricCell> bucket;
  switch (axis) {
    case Axis::Phases:
      for (std::size_t p = 0; p < t.phases(); ++p) {
        bucket.clear();
        for (std::size_t v = 0; v < t.videos(); ++v)
          for (std::size_t r = 0; r < t.runs(); ++r) bucket.push_back(t.at(p, v, r));
        out.push_back(mean_cells(bucket));
      }
      break;
    case Axis::Videos:
      for (std::size_t v = 0; v < t.videos(); ++v) {
        bucket.clear();
        for (std::size_t p = 0; p < t.phases(); ++p)
          for (std::size_t r = 0; r < t.runs(); ++r) bucket.push_back(t.at(p, v, r));
        out.push_back(mean_cells(bucket));
      }
      break;
    case Axis::Runs:
      for (std::size_t r = 0; r < t.runs(); ++r) {
        bucket.clear();
        for (std::size_t p = 0; p < t.phases(); ++p)
          for (std::size_t v = 0; v < t.videos(); ++v) bucket.push_back(t.at(p, v, r));
        out.push_back(mean_cells(bucket));
      }
      break;
  }
  return out;
}

double require_defined(const MetricCell& cell) {
  if (!cell.is_defined()) throw Error(ErrorCode::NoDefinedCells, "no defined cell to average");
  return cell.value();
}

}  // namespace

double ordered_mean(const ResultTensor& t, AveragingOrder order) {
  switch (order) {
    case AveragingOrder::Flat:
      return require_defined(mean_cells(t.cells()));
    case AveragingOrder::VideoFirstThenPhase:
      return require_defined(mean_cells(collapse_cells(t, Axis::Phases)));
    case AveragingOrder::PhaseFirstThenVideo: {
      std::vector<MetricCell> points;
      std::vector<MetricCell> bucket;
      for (std::size_t v = 0; v < t.videos(); ++v)
        for (std::size_t r = 0; r < t.runs(); ++r) {
          bucket.clear();
          for (std::size_t p = 0; p < t.phases(); ++p) bucket.push_back(t.at(p, v, r));
          points.push_back(mean_cells(bucket));
        }
      return require_defined(mean_cells(points));
    }
  }
  return 0.0;
}

double sample_std(std::span<const double> values, StdMode mode, Axis axis) {
  const std::size_t k = values.size();
  if (k < 2) throw InsufficientPointsError(axis, k);
  double sum = 0.0;
  for (double x : values) sum += x;
  const double mean = sum / static_cast<double>(k);
  double squares = 0.0;
  for (double x : values) squares += (x - mean) * (x - mean);
  const double divisor = static_cast<double>(mode == StdMode::Corrected ? k - 1 : k);
  return std::sqrt(squares / divisor);
}

std::vector<double> collapse(const ResultTensor& t, Axis axis) {
  std::vector<double> values;
  for (const auto& c : collapse_cells(t, axis))
    if (c.is_defined()) values.push_back(c.value());
  return values;
}

double std_over(const ResultTensor& t, Axis axis, StdMode mode) {
  const auto values = collapse(t, axis);
  return sample_std(values, mode, axis);
}

Summary summarize(const ResultTensor& t, const SummarySpec& spec) {
  Summary s;
  s.std_mode = spec.std_mode;
  s.order = spec.order;
  s.mean = ordered_mean(t, spec.order);
  auto spread = [&](Axis axis) -> std::optional<double> {
    const auto values = collapse(t, axis);
    if (values.size() < 2) return std::nullopt;
    return sample_std(values, spec.std_mode, axis);
  };
  s.sd_videos = spread(Axis::Videos);
  if (t.phases() > 1) s.sd_phases = spread(Axis::Phases);
  s.sd_runs = spread(Axis::Runs);
  return s;
}

}  // namespace phaseeval
