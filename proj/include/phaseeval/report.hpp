#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phaseeval/aggregate.hpp"
#include "phaseeval/metrics.hpp"
#include "phaseeval/relaxed.hpp"

namespace phaseeval {

/// Every choice that produced the numbers of a report.
struct ReportProtocol {
  std::string mode = "regular";  // regular | relaxed | legacy-bug-compatible
  UndefinedPolicy policy = UndefinedPolicy::ExcludeMissingPhase;
  AveragingOrder order = AveragingOrder::Flat;
  StdMode std_mode = StdMode::Corrected;
  bool relaxed = false;
  std::size_t omega = 0;
  std::optional<MatrixMode> matrices;
  bool bug_compatible = false;
  bool truncate = false;
  std::optional<std::string> split;
  std::size_t phase_count = 0;
  std::size_t videos = 0;
  std::vector<std::string> run_ids;
  std::optional<std::string> watermark;
};

/// scope is one of phase-wise, video-level, test-set, frame-wise.
struct MetricSummary {
  std::string name;
  std::string scope;
  Summary stats;
};

struct PhaseSummary {
  PhaseId phase = 0;
  std::string name;
  std::vector<MetricSummary> metrics;
};

/// Raw cells of one (video, run): per-phase vectors and video-level values.
struct VideoCells {
  VideoId video = 0;
  std::string run;
  std::map<std::string, std::vector<MetricCell>> phase_metrics;
  std::map<std::string, MetricCell> video_metrics;
};

struct EvaluationReport {
  std::string format_version = "1";
  ReportProtocol protocol;
  std::vector<MetricSummary> summary;
  std::vector<PhaseSummary> per_phase;
  std::optional<std::vector<VideoCells>> per_video;

  /// nullptr when the report has no such metric.
  const MetricSummary* find(std::string_view name) const;
};

enum class ReportFormat { Json, Csv, Md };

std::string_view to_string(ReportFormat f);
ReportFormat parse_report_format(std::string_view text);

/// json: sorted keys, 6 fractional digits, null for not-applicable spreads.
/// csv: one row per (metric, statistic) carrying the protocol columns.
/// md: protocol header line followed by summary and per-phase tables.
std::string write_report(const EvaluationReport& report, ReportFormat format);

}  // namespace phaseeval
