#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "phaseeval/cell.hpp"
#include "phaseeval/confusion.hpp"

namespace phaseeval {

enum class MetricKind { Precision, Recall, F1, Jaccard };

inline constexpr MetricKind kPhaseMetricKinds[] = {MetricKind::Precision, MetricKind::Recall,
                                                   MetricKind::F1, MetricKind::Jaccard};

/// How undefined phase-wise results are handled before aggregation.
///   ExcludeUndefined     drop only cells that are undefined
///   ExcludeMissingPhase  drop every cell of a phase missing from the
///                        video's annotation, then drop remaining undefined
///   ZeroFill / OneFill   replace undefined cells by 0 / 1
enum class UndefinedPolicy { ExcludeUndefined, ExcludeMissingPhase, ZeroFill, OneFill };

std::string_view to_string(MetricKind kind);
std::string_view to_string(UndefinedPolicy policy);
MetricKind parse_metric_kind(std::string_view text);
UndefinedPolicy parse_policy(std::string_view text);

/// Undefined exactly when the closed-form denominator is zero.
MetricCell phase_metric(MetricKind kind, const ConfusionMatrix& c, PhaseId p);

/// Fraction of frames predicted correctly. Throws EmptyVideo on a zero total.
MetricCell accuracy(const ConfusionMatrix& c);

/// Mean recall over annotated phases.
MetricCell balanced_accuracy(const ConfusionMatrix& c);

/// Single-cell policy rule. `phase_annotated` tells whether the phase occurs
/// in the video's annotation.
MetricCell apply_policy(MetricCell cell, UndefinedPolicy policy, bool phase_annotated);

/// Applies the policy to every cell; `annotated[v][p]` is true when phase id
/// `tensor.phase_ids()[p]` occurs in the annotation of video position v.
void apply_policy(ResultTensor& tensor, UndefinedPolicy policy,
                  const std::vector<std::vector<bool>>& annotated);

/// Per-phase cells of one confusion matrix after policy application.
std::vector<MetricCell> phase_cells(MetricKind kind, const ConfusionMatrix& c,
                                    UndefinedPolicy policy);

/// Arithmetic mean over retained phases; Excluded if nothing is retained.
MetricCell macro_metric(MetricKind kind, const ConfusionMatrix& c, UndefinedPolicy policy);

/// Harmonic mean of macro precision and macro recall (0 when both are 0).
/// Excluded when either macro mean is Excluded.
MetricCell macro_f1_of_means(const ConfusionMatrix& c, UndefinedPolicy policy);

/// 2ab / (a + b); 0 when a + b == 0.
double harmonic_mean(double a, double b);

/// Harmonic mean of the overall mean precision and mean recall over a test
/// set. Throws DegenerateMeans when both means are zero.
double f1_upper(double mean_precision, double mean_recall);

}  // namespace phaseeval
