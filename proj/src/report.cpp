#include "phaseeval/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace phaseeval {

using nlohmann::json;

const MetricSummary* EvaluationReport::find(std::string_view name) const {
  for (const auto& m : summary)
    if (m.name == name) return &m;
  return nullptr;
}

std::string_view to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Md: return "md";
  }
  return "?";
}

ReportFormat parse_report_format(std::string_view text) {
  for (auto f : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Md})
    if (to_string(f) == text) return f;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(text) + "'");
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// nlohmann's dump prints the shortest round-trip form; reports need a fixed
// number of fractional digits, so floats are emitted by hand.
void emit(std::ostringstream& out, const json& j, int indent) {
  const std::string pad(indent * 2, ' ');
  const std::string inner((indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out << ",\n";
      first = false;
      out << inner << json(key).dump() << ": ";
      emit(out, value, indent + 1);
    }
    out << "\n" << pad << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]";
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out << ",\n";
      out << inner;
      emit(out, j[i], indent + 1);
    }
    out << "\n" << pad << "]";
  } else if (j.is_number_float()) {
    out << fixed(j.get<double>(), 6);
  } else {
    out << j.dump();
  }
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json cell_json(const MetricCell& c) {
  if (c.is_defined()) return c.value();
  return c.is_undefined() ? "undefined" : "excluded";
}

json protocol_json(const ReportProtocol& p) {
  json j;
  j["mode"] = p.mode;
  j["policy"] = std::string(to_string(p.policy));
  j["order"] = std::string(to_string(p.order));
  j["std_mode"] = std::string(to_string(p.std_mode));
  j["relaxed"] = p.relaxed;
  j["omega"] = p.omega;
  j["matrices"] = p.matrices ? json(std::string(to_string(*p.matrices))) : json(nullptr);
  j["bug_compatible"] = p.bug_compatible;
  j["truncate"] = p.truncate;
  j["split"] = p.split ? json(*p.split) : json(nullptr);
  j["phase_count"] = p.phase_count;
  j["videos"] = p.videos;
  j["runs"] = p.run_ids.size();
  j["run_ids"] = p.run_ids;
  j["watermark"] = p.watermark ? json(*p.watermark) : json(nullptr);
  return j;
}

json summary_json(const MetricSummary& m) {
  json j;
  j["scope"] = m.scope;
  j["mean"] = opt(m.stats.mean);
  j["sd_videos"] = opt(m.stats.sd_videos);
  j["sd_phases"] = opt(m.stats.sd_phases);
  j["sd_runs"] = opt(m.stats.sd_runs);
  j["order"] = std::string(to_string(m.stats.order));
  j["std_mode"] = std::string(to_string(m.stats.std_mode));
  return j;
}

std::string write_json(const EvaluationReport& r) {
  json doc;
  doc["format_version"] = r.format_version;
  doc["protocol"] = protocol_json(r.protocol);
  doc["summary"] = json::object();
  for (const auto& m : r.summary) doc["summary"][m.name] = summary_json(m);
  doc["per_phase"] = json::array();
  for (const auto& ps : r.per_phase) {
    json jp;
    jp["phase"] = ps.phase;
    jp["name"] = ps.name;
    jp["metrics"] = json::object();
    for (const auto& m : ps.metrics) jp["metrics"][m.name] = summary_json(m);
    doc["per_phase"].push_back(jp);
  }
  if (r.per_video) {
    doc["per_video"] = json::array();
    for (const auto& vc : *r.per_video) {
      json jv;
      jv["video"] = vc.video;
      jv["run"] = vc.run;
      for (const auto& [name, cells] : vc.phase_metrics) {
        json arr = json::array();
        for (const auto& c : cells) arr.push_back(cell_json(c));
        jv["phase_metrics"][name] = arr;
      }
      for (const auto& [name, c] : vc.video_metrics) jv["video_metrics"][name] = cell_json(c);
      doc["per_video"].push_back(jv);
    }
  }
  std::ostringstream out;
  emit(out, doc, 0);
  out << "\n";
  return out.str();
}

std::string stat_text(const std::optional<double>& v, int digits, const char* missing) {
  return v ? fixed(*v, digits) : missing;
}

std::string protocol_line(const ReportProtocol& p) {
  std::ostringstream out;
  out << "mode=" << p.mode << "; policy=" << to_string(p.policy) << "; order=" << to_string(p.order)
      << "; std_mode=" << to_string(p.std_mode) << "; relaxed=" << (p.relaxed ? "true" : "false");
  if (p.relaxed) {
    out << " (omega=" << p.omega << ", matrices=" << (p.matrices ? to_string(*p.matrices) : "none")
        << ", bug_compatible=" << (p.bug_compatible ? "true" : "false")
        << ", truncate=" << (p.truncate ? "true" : "false") << ")";
  }
  out << "; split=" << (p.split ? *p.split : "unspecified") << "; phases=" << p.phase_count
      << "; videos=" << p.videos << "; runs=" << p.run_ids.size();
  if (p.watermark) out << "; " << *p.watermark;
  return out.str();
}

std::string write_csv(const EvaluationReport& r) {
  const auto& p = r.protocol;
  const std::string context = p.mode + "," + std::string(to_string(p.policy)) + "," +
                              std::string(to_string(p.order)) + "," + std::string(to_string(p.std_mode)) +
                              "," + (p.relaxed ? "true" : "false") + "," + std::to_string(p.omega) + "," +
                              (p.matrices ? std::string(to_string(*p.matrices)) : "NA") + "," +
                              (p.bug_compatible ? "true" : "false") + "," + (p.truncate ? "true" : "false") +
                              "," + (p.watermark ? *p.watermark : "NA");
  std::ostringstream out;
  out << "scope,phase,metric,statistic,value,mode,policy,order,std_mode,relaxed,omega,matrices,"
         "bug_compatible,truncate,watermark\n";
  auto rows = [&](const MetricSummary& m, const std::string& phase) {
    const std::pair<const char*, const std::optional<double>*> stats[] = {
        {"mean", &m.stats.mean},
        {"sd_videos", &m.stats.sd_videos},
        {"sd_phases", &m.stats.sd_phases},
        {"sd_runs", &m.stats.sd_runs}};
    for (const auto& [stat, value] : stats)
      out << m.scope << ',' << phase << ',' << m.name << ',' << stat << ',' << stat_text(*value, 6, "NA") << ','
          << context << "\n";
  };
  for (const auto& m : r.summary) rows(m, "all");
  for (const auto& ps : r.per_phase)
    for (const auto& m : ps.metrics) rows(m, std::to_string(ps.phase));
  return out.str();
}

std::string write_md(const EvaluationReport& r) {
  std::ostringstream out;
  out << "Protocol: " << protocol_line(r.protocol) << "\n\n";
  if (r.protocol.watermark)
    out << "**" << *r.protocol.watermark << "**: reproduces a deprecated evaluation script.\n\n";
  out << "| Metric | Scope | M | SD_V | SD_P | SD_R |\n|---|---|---|---|---|---|\n";
  for (const auto& m : r.summary)
    out << "| " << m.name << " | " << m.scope << " | " << stat_text(m.stats.mean, 3, "n/a") << " | "
        << stat_text(m.stats.sd_videos, 3, "–") << " | " << stat_text(m.stats.sd_phases, 3, "–") << " | "
        << stat_text(m.stats.sd_runs, 3, "–") << " |\n";
  if (!r.per_phase.empty()) {
    out << "\nPer phase, M (SD_V):\n\n| Phase |";
    for (const auto& m : r.per_phase.front().metrics) out << ' ' << m.name << " |";
    out << "\n|---|";
    for (std::size_t k = 0; k < r.per_phase.front().metrics.size(); ++k) out << "---|";
    out << "\n";
    for (const auto& ps : r.per_phase) {
      out << "| " << ps.phase << " " << ps.name << " |";
      for (const auto& m : ps.metrics) {
        out << ' ' << stat_text(m.stats.mean, 3, "n/a");
        if (m.stats.sd_videos) out << " (" << fixed(*m.stats.sd_videos, 3) << ")";
        out << " |";
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string write_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return write_json(report);
    case ReportFormat::Csv: return write_csv(report);
    case ReportFormat::Md: return write_md(report);
  }
  return {};
}

}  // namespace phaseeval
