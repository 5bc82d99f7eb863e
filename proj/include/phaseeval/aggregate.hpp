#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "phaseeval/cell.hpp"

namespace phaseeval {

/// Corrected divides the sum of squares by k - 1 (Bessel), Uncorrected by k.
enum class StdMode { Corrected, Uncorrected };

/// Flat averages every retained cell at once. PhaseFirstThenVideo averages
/// over phases within each (video, run) and then over those points;
/// VideoFirstThenPhase averages over (video, run) within each phase and then
/// over phases.
enum class AveragingOrder { Flat, PhaseFirstThenVideo, VideoFirstThenPhase };

enum class Axis { Videos, Phases, Runs };

std::string_view to_string(StdMode mode);
std::string_view to_string(AveragingOrder order);
std::string_view to_string(Axis axis);
StdMode parse_std_mode(std::string_view text);
AveragingOrder parse_order(std::string_view text);

struct SummarySpec {
  StdMode std_mode = StdMode::Corrected;
  AveragingOrder order = AveragingOrder::Flat;
};

class InsufficientPointsError : public Error {
 public:
  InsufficientPointsError(Axis axis, std::size_t k)
      : Error(ErrorCode::InsufficientPoints,
              "standard deviation over " + std::string(to_string(axis)) + " needs at least 2 points, got " +
                  std::to_string(k)),
        axis(axis),
        k(k) {}

  Axis axis;
  std::size_t k;
};

/// Mean over Defined cells; Excluded when none remain.
MetricCell mean_cells(std::span<const MetricCell> cells);

/// Throws Error(NoDefinedCells) when the tensor holds no Defined cell.
double ordered_mean(const ResultTensor& tensor, AveragingOrder order);

/// Throws InsufficientPointsError(axis, k) for fewer than two samples.
double sample_std(std::span<const double> values, StdMode mode, Axis axis = Axis::Videos);

/// One value per position along `axis`: the mean over the other two axes.
/// Positions whose collapse is Excluded are dropped.
std::vector<double> collapse(const ResultTensor& tensor, Axis axis);

double std_over(const ResultTensor& tensor, Axis axis, StdMode mode);

/// M and the three spreads. A spread is nullopt (not applicable) when its
/// axis offers fewer than two points; SD_P is never reported for a
/// single-phase tensor.
struct Summary {
  std::optional<double> mean;
  std::optional<double> sd_videos;
  std::optional<double> sd_phases;
  std::optional<double> sd_runs;
  StdMode std_mode = StdMode::Corrected;
  AveragingOrder order = AveragingOrder::Flat;
};

/// Propagates NoDefinedCells from the mean.
Summary summarize(const ResultTensor& tensor, const SummarySpec& spec);

}  // namespace phaseeval
