#include "phaseeval/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace phaseeval {

using nlohmann::ordered_json;

std::string_view to_string(F1Variant v) {
  switch (v) {
    case F1Variant::MeanOfHarmonic: return "mean-of-harmonic";
    case F1Variant::HarmonicOfMacroMeans: return "harmonic-of-macro-means";
    case F1Variant::HarmonicOfOverallMeans: return "harmonic-of-overall-means";
  }
  return "?";
}

std::string_view to_string(StdSource s) {
  switch (s) {
    case StdSource::Videos: return "videos";
    case StdSource::Phases: return "phases";
    case StdSource::Runs: return "runs";
  }
  return "?";
}

F1Variant parse_f1_variant(std::string_view text) {
  for (auto v : {F1Variant::MeanOfHarmonic, F1Variant::HarmonicOfMacroMeans,
                 F1Variant::HarmonicOfOverallMeans})
    if (to_string(v) == text) return v;
  throw Error(ErrorCode::InvalidArgument, "unknown F1 variant '" + std::string(text) + "'");
}

StdSource parse_std_source(std::string_view text) {
  for (auto s : {StdSource::Videos, StdSource::Phases, StdSource::Runs})
    if (to_string(s) == text) return s;
  throw Error(ErrorCode::InvalidArgument, "unknown std source '" + std::string(text) + "'");
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Hard: return "hard";
    case Severity::Soft: return "soft";
    case Severity::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Comparable: return "comparable";
    case Verdict::Incomparable: return "incomparable";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

const std::vector<std::string>& canonical_metric_names() {
  static const std::vector<std::string> names = {
      "precision", "recall",   "jaccard",      "f1",
      "accuracy",  "macro_f1_of_means", "f1_upper", "frame_f1"};
  return names;
}

bool is_f1_metric(std::string_view name) {
  return name == "f1" || name == "macro_f1_of_means" || name == "f1_upper";
}

namespace {

template <typename T>
std::string text_of(const std::optional<T>& v);

std::string text_of_value(const std::string& v) { return v; }
std::string text_of_value(bool v) { return v ? "true" : "false"; }
std::string text_of_value(int v) { return std::to_string(v); }
template <typename E>
std::string text_of_value(E v) {
  return std::string(to_string(v));
}

template <typename T>
std::string text_of(const std::optional<T>& v) {
  return v ? text_of_value(*v) : "unknown";
}

// Compares one field and appends a finding when the two sides differ or
// either side is unknown.
template <typename T>
void compare_field(std::vector<Finding>& out, const std::string& rule, const std::string& field,
                   Severity severity, const std::optional<T>& a, const std::optional<T>& b) {
  if (!a || !b) {
    out.push_back({rule, Severity::Unknown, field + " is unknown for at least one result"});
    return;
  }
  if (*a == *b) return;
  auto x = text_of_value(*a);
  auto y = text_of_value(*b);
  if (y < x) std::swap(x, y);
  out.push_back({rule, severity, field + " differs: " + x + " vs " + y});
}

ComparabilityReport finish(std::vector<Finding> findings) {
  std::sort(findings.begin(), findings.end());
  ComparabilityReport r;
  bool hard = false, unknown = false;
  for (const auto& f : findings) {
    hard = hard || f.severity == Severity::Hard;
    unknown = unknown || f.severity == Severity::Unknown;
  }
  r.verdict = hard ? Verdict::Incomparable : unknown ? Verdict::Indeterminate : Verdict::Comparable;
  r.findings = std::move(findings);
  return r;
}

}  // namespace

ComparabilityReport check_comparable(const ProtocolDescriptor& a, const ProtocolDescriptor& b) {
  std::vector<Finding> f;
  compare_field(f, "C", "split_name", Severity::Hard, a.split_name, b.split_name);
  compare_field(f, "A", "relaxed", Severity::Hard, a.relaxed, b.relaxed);
  if (a.relaxed && b.relaxed && *a.relaxed && *b.relaxed)
    compare_field(f, "A", "omega", Severity::Hard, a.omega, b.omega);
  compare_field(f, "F1", "f1_variant", Severity::Hard, a.f1_variant, b.f1_variant);
  compare_field(f, "POLICY", "policy", Severity::Hard, a.policy, b.policy);
  compare_field(f, "B", "std_source", Severity::Soft, a.std_source, b.std_source);
  compare_field(f, "STD-MODE", "std_mode", Severity::Soft, a.std_mode, b.std_mode);
  return finish(std::move(f));
}

ComparabilityReport check_entry(const ReportedResult& entry, const ProtocolDescriptor& reference) {
  bool reports_f1 = false, reports_spread = false;
  for (const auto& [name, value] : entry.metrics) {
    reports_f1 = reports_f1 || is_f1_metric(name);
    reports_spread = reports_spread || value.spread.has_value();
  }
  auto full = check_comparable(entry.protocol, reference);
  std::vector<Finding> kept;
  for (auto& f : full.findings) {
    if (f.rule == "F1" && !reports_f1) continue;
    if ((f.rule == "B" || f.rule == "STD-MODE") && !reports_spread) continue;
    kept.push_back(std::move(f));
  }
  return finish(std::move(kept));
}

namespace {

[[noreturn]] void schema_error(const std::string& origin, const std::string& detail) {
  throw Error(ErrorCode::SchemaError, origin + ": " + detail);
}

bool is_unknown(const ordered_json& j) { return j.is_string() && j.get<std::string>() == "unknown"; }

template <typename T, typename Parse>
std::optional<T> enum_field(const ordered_json& obj, const char* key, Parse parse,
                            const std::string& origin) {
  const auto& j = obj.at(key);
  if (is_unknown(j)) return std::nullopt;
  if (!j.is_string()) schema_error(origin, std::string(key) + " must be a string");
  try {
    return parse(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(origin, std::string(key) + ": " + e.what());
  }
}

std::optional<bool> bool_field(const ordered_json& obj, const char* key, const std::string& origin) {
  const auto& j = obj.at(key);
  if (is_unknown(j)) return std::nullopt;
  if (!j.is_boolean()) schema_error(origin, std::string(key) + " must be true, false or \"unknown\"");
  return j.get<bool>();
}

std::optional<int> int_field(const ordered_json& obj, const char* key, const std::string& origin) {
  const auto& j = obj.at(key);
  if (is_unknown(j)) return std::nullopt;
  if (!j.is_number_integer() || j.get<long long>() < 0)
    schema_error(origin, std::string(key) + " must be a non-negative integer or \"unknown\"");
  return j.get<int>();
}

const char* const kProtocolFields[] = {"split_name", "relaxed",  "omega",
                                       "policy",     "f1_variant", "std_source",
                                       "std_mode",   "runs",     "trained_on_validation"};

ProtocolDescriptor protocol_from_json(const ordered_json& j, const std::string& origin) {
  if (!j.is_object()) schema_error(origin, "protocol must be an object");
  for (const auto* field : kProtocolFields)
    if (!j.contains(field)) schema_error(origin, std::string("protocol lacks field ") + field);
  for (const auto& [key, _] : j.items())
    if (std::find_if(std::begin(kProtocolFields), std::end(kProtocolFields),
                     [&](const char* f) { return key == f; }) == std::end(kProtocolFields))
      schema_error(origin, "unexpected protocol field " + key);
  ProtocolDescriptor p;
  const auto& split = j.at("split_name");
  if (!split.is_string()) schema_error(origin, "split_name must be a string");
  if (!is_unknown(split)) p.split_name = split.get<std::string>();
  p.relaxed = bool_field(j, "relaxed", origin);
  p.omega = int_field(j, "omega", origin);
  p.policy = enum_field<UndefinedPolicy>(j, "policy", parse_policy, origin);
  p.f1_variant = enum_field<F1Variant>(j, "f1_variant", parse_f1_variant, origin);
  p.std_source = enum_field<StdSource>(j, "std_source", parse_std_source, origin);
  p.std_mode = enum_field<StdMode>(j, "std_mode", parse_std_mode, origin);
  p.runs = int_field(j, "runs", origin);
  p.trained_on_validation = bool_field(j, "trained_on_validation", origin);
  return p;
}

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  if (!v) return "unknown";
  if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, int> || std::is_same_v<T, std::string>)
    return *v;
  else
    return std::string(to_string(*v));
}

ordered_json protocol_json(const ProtocolDescriptor& p) {
  ordered_json j;
  j["split_name"] = optional_json(p.split_name);
  j["relaxed"] = optional_json(p.relaxed);
  j["omega"] = optional_json(p.omega);
  j["policy"] = optional_json(p.policy);
  j["f1_variant"] = optional_json(p.f1_variant);
  j["std_source"] = optional_json(p.std_source);
  j["std_mode"] = optional_json(p.std_mode);
  j["runs"] = optional_json(p.runs);
  j["trained_on_validation"] = optional_json(p.trained_on_validation);
  return j;
}

ReportedResult record_from_json(const ordered_json& j, const std::string& origin) {
  if (!j.is_object()) schema_error(origin, "record must be an object");
  for (const auto* key : {"method_name", "source", "protocol", "metrics"})
    if (!j.contains(key)) schema_error(origin, std::string("record lacks field ") + key);
  ReportedResult r;
  if (!j["method_name"].is_string() || !j["source"].is_string())
    schema_error(origin, "method_name and source must be strings");
  r.method_name = j["method_name"].get<std::string>();
  r.source = j["source"].get<std::string>();
  const std::string where = origin + " (" + r.method_name + ", " + r.source + ")";
  r.protocol = protocol_from_json(j["protocol"], where);
  const auto& metrics = j["metrics"];
  if (!metrics.is_object()) schema_error(where, "metrics must be an object");
  const auto& names = canonical_metric_names();
  for (const auto& [name, value] : metrics.items()) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      schema_error(where, "unknown metric name " + name);
    if (!value.is_object() || !value.contains("mean") || !value["mean"].is_number())
      schema_error(where, "metric " + name + " needs a numeric mean");
    ReportedValue v;
    v.mean = value["mean"].get<double>();
    if (value.contains("spread") && !value["spread"].is_null()) {
      if (!value["spread"].is_number()) schema_error(where, "spread of " + name + " must be a number");
      v.spread = value["spread"].get<double>();
    }
    r.metrics.emplace(name, v);
  }
  return r;
}

ordered_json record_json(const ReportedResult& r) {
  ordered_json j;
  j["method_name"] = r.method_name;
  j["source"] = r.source;
  j["protocol"] = protocol_json(r.protocol);
  ordered_json metrics = ordered_json::object();
  for (const auto& [name, v] : r.metrics) {
    ordered_json m;
    m["mean"] = v.mean;
    m["spread"] = v.spread ? ordered_json(*v.spread) : ordered_json(nullptr);
    metrics[name] = m;
  }
  j["metrics"] = metrics;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Ledger ingest_ledger(std::string_view text, const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    schema_error(origin, e.what());
  }
  Ledger ledger;
  const ordered_json* records = &doc;
  if (doc.is_object()) {
    if (!doc.contains("records")) schema_error(origin, "object ledger lacks \"records\"");
    if (doc.contains("provenance") && doc["provenance"].is_string())
      ledger.provenance = doc["provenance"].get<std::string>();
    records = &doc["records"];
  }
  if (!records->is_array()) schema_error(origin, "records must be an array");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : *records) {
    auto record = record_from_json(r, origin);
    if (!seen.emplace(record.method_name, record.source).second)
      throw Error(ErrorCode::DuplicateEntry,
                  origin + ": (" + record.method_name + ", " + record.source + ") appears twice");
    ledger.records.push_back(std::move(record));
  }
  return ledger;
}

Ledger load_ledger(const std::string& path) { return ingest_ledger(read_file(path), path); }

std::string serialize_ledger(const Ledger& ledger) {
  ordered_json doc;
  doc["format_version"] = "1";
  doc["provenance"] = ledger.provenance;
  doc["records"] = ordered_json::array();
  for (const auto& r : ledger.records) doc["records"].push_back(record_json(r));
  return doc.dump(2) + "\n";
}

std::string seed_ledger_path() {
#ifdef PHASEEVAL_SEED_LEDGER
  return PHASEEVAL_SEED_LEDGER;
#else
  return "data/seed_ledger.json";
#endif
}

Ledger seed_ledger() { return load_ledger(seed_ledger_path()); }

ProtocolDescriptor parse_protocol(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    schema_error("protocol", e.what());
  }
  return protocol_from_json(j, "protocol");
}

std::string protocol_to_json(const ProtocolDescriptor& p) { return protocol_json(p).dump(2); }

ProtocolDescriptor parse_protocol_assignments(std::string_view text) {
  ordered_json j;
  for (const auto* field : kProtocolFields) j[field] = "unknown";
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    if (!j.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown protocol field '" + key + "'");
    if (value == "true" || value == "false")
      j[key] = value == "true";
    else if (!value.empty() && std::all_of(value.begin(), value.end(), ::isdigit) && key != "split_name")
      j[key] = std::stoi(value);
    else
      j[key] = value;
  }
  return protocol_from_json(j, "reference protocol");
}

Leaderboard render_leaderboard(const Ledger& ledger, const ProtocolDescriptor& reference,
                               const std::string& sort_metric) {
  if (ledger.records.empty()) throw Error(ErrorCode::EmptyLedger, "the ledger has no records");
  std::map<std::vector<Finding>, LeaderboardGroup> by_findings;
  for (const auto& r : ledger.records) {
    auto cmp = check_entry(r, reference);
    auto& g = by_findings[cmp.findings];
    g.comparison = std::move(cmp);
    g.entries.push_back(r);
  }
  Leaderboard board{reference, sort_metric, {}};
  for (auto& [_, g] : by_findings) {
    std::stable_sort(g.entries.begin(), g.entries.end(), [&](const auto& a, const auto& b) {
      const auto ia = a.metrics.find(sort_metric);
      const auto ib = b.metrics.find(sort_metric);
      const bool ha = ia != a.metrics.end(), hb = ib != b.metrics.end();
      if (ha != hb) return ha;
      if (ha && ia->second.mean != ib->second.mean) return ia->second.mean > ib->second.mean;
      return std::tie(a.method_name, a.source) < std::tie(b.method_name, b.source);
    });
    board.groups.push_back(std::move(g));
  }
  auto rank = [](Verdict v) {
    return v == Verdict::Comparable ? 0 : v == Verdict::Indeterminate ? 1 : 2;
  };
  std::stable_sort(board.groups.begin(), board.groups.end(), [&](const auto& a, const auto& b) {
    return rank(a.comparison.verdict) < rank(b.comparison.verdict);
  });
  return board;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_leaderboard(const Leaderboard& board, std::string_view format) {
  std::ostringstream out;
  if (format == "json") {
    ordered_json doc;
    doc["format_version"] = "1";
    doc["reference"] = protocol_json(board.reference);
    doc["sort_metric"] = board.sort_metric;
    doc["groups"] = ordered_json::array();
    for (const auto& g : board.groups) {
      ordered_json jg;
      jg["verdict"] = std::string(to_string(g.comparison.verdict));
      jg["findings"] = ordered_json::array();
      for (const auto& f : g.comparison.findings)
        jg["findings"].push_back(
            {{"rule", f.rule}, {"severity", std::string(to_string(f.severity))}, {"explanation", f.explanation}});
      jg["entries"] = ordered_json::array();
      for (const auto& e : g.entries) jg["entries"].push_back(record_json(e));
      doc["groups"].push_back(jg);
    }
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    out << "group,verdict,method_name,source,metric,mean,spread,findings\n";
    for (std::size_t k = 0; k < board.groups.size(); ++k) {
      const auto& g = board.groups[k];
      std::string rules;
      for (const auto& f : g.comparison.findings)
        rules += (rules.empty() ? "" : ";") + f.rule + ":" + std::string(to_string(f.severity));
      for (const auto& e : g.entries)
        for (const auto& [name, v] : e.metrics)
          out << k + 1 << ',' << to_string(g.comparison.verdict) << ',' << csv_field(e.method_name) << ','
              << csv_field(e.source) << ',' << name << ',' << fixed(v.mean, 6) << ','
              << (v.spread ? fixed(*v.spread, 6) : "NA") << ',' << csv_field(rules) << "\n";
    }
  } else if (format == "md") {
    out << "Reference protocol: " << protocol_json(board.reference).dump() << "\n";
    out << "Sorted by: " << board.sort_metric << "\n";
    for (std::size_t k = 0; k < board.groups.size(); ++k) {
      const auto& g = board.groups[k];
      out << "\n## Group " << k + 1 << " (" << to_string(g.comparison.verdict) << ")\n\n";
      if (g.comparison.findings.empty()) out << "No findings.\n";
      for (const auto& f : g.comparison.findings)
        out << "- [" << f.rule << ", " << to_string(f.severity) << "] " << f.explanation << "\n";
      std::vector<std::string> columns;
      for (const auto& name : canonical_metric_names())
        for (const auto& e : g.entries)
          if (e.metrics.count(name)) {
            columns.push_back(name);
            break;
          }
      out << "\n| Method | Source |";
      for (const auto& c : columns) out << ' ' << c << " |";
      out << "\n|---|---|";
      for (std::size_t c = 0; c < columns.size(); ++c) out << "---|";
      out << "\n";
      for (const auto& e : g.entries) {
        out << "| " << e.method_name << " | " << e.source << " |";
        for (const auto& c : columns) {
          const auto it = e.metrics.find(c);
          if (it == e.metrics.end()) {
            out << " |";
            continue;
          }
          out << ' ' << fixed(it->second.mean, 3);
          if (it->second.spread) out << " ± " << fixed(*it->second.spread, 3);
          out << " |";
        }
        out << "\n";
      }
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(format) + "'");
  }
  return out.str();
}

}  // namespace phaseeval
