#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phaseeval/aggregate.hpp"
#include "phaseeval/metrics.hpp"

namespace phaseeval {

enum class F1Variant { MeanOfHarmonic, HarmonicOfMacroMeans, HarmonicOfOverallMeans };
enum class StdSource { Videos, Phases, Runs };

std::string_view to_string(F1Variant v);
std::string_view to_string(StdSource s);
F1Variant parse_f1_variant(std::string_view text);
StdSource parse_std_source(std::string_view text);

/// Every evaluation choice that decides whether two numbers can be compared.
/// nullopt means the choice is unknown. For regular evaluation omega is 0.
/// std_source describes the spreads of the phase-wise metrics.
struct ProtocolDescriptor {
  std::optional<std::string> split_name;
  std::optional<bool> relaxed;
  std::optional<int> omega;
  std::optional<UndefinedPolicy> policy;
  std::optional<F1Variant> f1_variant;
  std::optional<StdSource> std_source;
  std::optional<StdMode> std_mode;
  std::optional<int> runs;
  std::optional<bool> trained_on_validation;

  bool operator==(const ProtocolDescriptor&) const = default;
};

struct ReportedValue {
  double mean = 0.0;
  std::optional<double> spread;
  bool operator==(const ReportedValue&) const = default;
};

/// Canonical metric names accepted in a ledger.
const std::vector<std::string>& canonical_metric_names();

/// Metric names that carry an F1 score of some variant.
bool is_f1_metric(std::string_view name);

struct ReportedResult {
  std::string method_name;
  std::string source;
  ProtocolDescriptor protocol;
  std::map<std::string, ReportedValue> metrics;
  bool operator==(const ReportedResult&) const = default;
};

enum class Severity { Hard, Soft, Unknown };
enum class Verdict { Comparable, Incomparable, Indeterminate };

std::string_view to_string(Severity s);
std::string_view to_string(Verdict v);

/// Rule ids: A relaxed flag or omega, B std source, C split, F1 variant,
/// POLICY undefined-value policy, STD-MODE estimator.
struct Finding {
  std::string rule;
  Severity severity = Severity::Soft;
  std::string explanation;
  bool operator==(const Finding&) const = default;
  auto operator<=>(const Finding& o) const {
    if (auto c = rule <=> o.rule; c != 0) return c;
    if (auto c = severity <=> o.severity; c != 0) return c;
    return explanation <=> o.explanation;
  }
};

struct ComparabilityReport {
  Verdict verdict = Verdict::Comparable;
  std::vector<Finding> findings;
};

/// Symmetric in its arguments: explanations list the two values in sorted order.
ComparabilityReport check_comparable(const ProtocolDescriptor& a, const ProtocolDescriptor& b);

/// As above, but drops findings that cannot affect the reported numbers: F1
/// variant findings when the entry reports no F1 score, and spread findings
/// when it reports no spread.
ComparabilityReport check_entry(const ReportedResult& entry, const ProtocolDescriptor& reference);

struct Ledger {
  std::string provenance;
  std::vector<ReportedResult> records;
};

/// Accepts either a top-level array of records or an object with a
/// "records" array. Throws SchemaError or DuplicateEntry.
Ledger ingest_ledger(std::string_view text, const std::string& origin = "<memory>");
Ledger load_ledger(const std::string& path);
std::string serialize_ledger(const Ledger& ledger);

/// The shipped table of published Cholec80 results, as reported.
Ledger seed_ledger();
std::string seed_ledger_path();

ProtocolDescriptor parse_protocol(std::string_view json_text);
std::string protocol_to_json(const ProtocolDescriptor& p);

/// Key=value list such as "split_name=32:8:40,relaxed=false".
/// Unlisted fields stay unknown.
ProtocolDescriptor parse_protocol_assignments(std::string_view text);

struct LeaderboardGroup {
  ComparabilityReport comparison;
  std::vector<ReportedResult> entries;
};

struct Leaderboard {
  ProtocolDescriptor reference;
  std::string sort_metric;
  std::vector<LeaderboardGroup> groups;
};

/// Groups entries by their findings against the reference; within a group
/// entries are sorted by `sort_metric` descending, entries without it last.
/// Groups are ordered Comparable, Indeterminate, Incomparable. Throws
/// EmptyLedger.
Leaderboard render_leaderboard(const Ledger& ledger, const ProtocolDescriptor& reference,
                               const std::string& sort_metric = "accuracy");

/// "json", "md" or "csv".
std::string write_leaderboard(const Leaderboard& board, std::string_view format);

}  // namespace phaseeval
