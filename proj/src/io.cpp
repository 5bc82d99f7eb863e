#include "phaseeval/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "phaseeval/parallel.hpp"

namespace phaseeval {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << content;
}

LabelSequence parse_labels(const std::string& text, const std::string& origin) {
  if (text.empty()) throw Error(ErrorCode::EmptyFile, origin);
  std::vector<PhaseId> labels;
  std::size_t pos = 0, line = 0;
  while (pos < text.size()) {
    ++line;
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string content = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!content.empty() && content.back() == '\r') content.pop_back();
    PhaseId value = 0;
    const auto* first = content.data();
    const auto* last = first + content.size();
    const auto [end, ec] = std::from_chars(first, last, value);
    if (content.empty() || ec != std::errc() || end != last || content.front() == '-' ||
        content.front() == '+')
      throw ParseError(origin, line, content);
    labels.push_back(value);
  }
  return LabelSequence(std::move(labels));
}

LabelSequence load_labels(const std::string& path) { return parse_labels(read_text_file(path), path); }

std::string format_labels(const LabelSequence& seq) {
  std::string out;
  for (auto label : seq.labels) {
    out += std::to_string(label);
    out += '\n';
  }
  return out;
}

void write_labels(const std::string& path, const LabelSequence& seq) {
  write_text_file(path, format_labels(seq));
}

namespace {

[[noreturn]] void schema_error(const std::string& origin, const std::string& detail) {
  throw Error(ErrorCode::SchemaError, origin + ": " + detail);
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunManifest parse_manifest(const std::string& text, const std::string& base_dir,
                           const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    schema_error(origin, e.what());
  }
  if (!doc.is_object()) schema_error(origin, "manifest must be an object");
  if (!doc.contains("phase_count") || !doc["phase_count"].is_number_integer() ||
      doc["phase_count"].get<long long>() < 1)
    schema_error(origin, "phase_count must be a positive integer");
  if (!doc.contains("videos") || !doc["videos"].is_array() || doc["videos"].empty())
    schema_error(origin, "videos must be a non-empty array");
  RunManifest m;
  m.phase_count = doc["phase_count"].get<std::size_t>();
  if (doc.contains("split") && !doc["split"].is_null()) {
    if (!doc["split"].is_string()) schema_error(origin, "split must be a string");
    m.split = doc["split"].get<std::string>();
  }
  std::set<VideoId> ids;
  std::optional<std::set<std::string>> run_set;
  for (const auto& v : doc["videos"]) {
    if (!v.is_object() || !v.contains("id") || !v["id"].is_number_integer())
      schema_error(origin, "every video needs an integer id");
    ManifestVideo mv;
    mv.id = v["id"].get<VideoId>();
    if (!ids.insert(mv.id).second) schema_error(origin, "video " + std::to_string(mv.id) + " is listed twice");
    if (!v.contains("annotation") || !v["annotation"].is_string())
      schema_error(origin, "video " + std::to_string(mv.id) + " needs an annotation path");
    mv.annotation = resolve(base_dir, v["annotation"].get<std::string>());
    if (!v.contains("predictions") || !v["predictions"].is_object() || v["predictions"].empty())
      schema_error(origin, "video " + std::to_string(mv.id) + " needs at least one prediction");
    std::set<std::string> runs;
    for (const auto& [run, path] : v["predictions"].items()) {
      if (!path.is_string()) schema_error(origin, "prediction paths must be strings");
      mv.predictions[run] = resolve(base_dir, path.get<std::string>());
      runs.insert(run);
    }
    if (!run_set) run_set = runs;
    else if (*run_set != runs)
      throw Error(ErrorCode::RaggedRuns, "video " + std::to_string(mv.id) +
                                             " has a different set of runs than the first video");
    m.videos.push_back(std::move(mv));
  }
  m.run_ids.assign(run_set->begin(), run_set->end());
  for (const auto& v : m.videos) {
    if (!fs::exists(v.annotation)) throw Error(ErrorCode::MissingFile, v.annotation);
    for (const auto& [_, path] : v.predictions)
      if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path);
  }
  return m;
}

RunManifest load_manifest(const std::string& path) {
  const auto text = read_text_file(path);
  return parse_manifest(text, fs::path(path).parent_path().string(), path);
}

std::string format_manifest(const RunManifest& m) {
  ordered_json doc;
  doc["format_version"] = "1";
  doc["phase_count"] = m.phase_count;
  if (m.split) doc["split"] = *m.split;
  doc["videos"] = ordered_json::array();
  for (const auto& v : m.videos) {
    ordered_json jv;
    jv["id"] = v.id;
    jv["annotation"] = v.annotation;
    jv["predictions"] = ordered_json::object();
    for (const auto& [run, path] : v.predictions) jv["predictions"][run] = path;
    doc["videos"].push_back(jv);
  }
  return doc.dump(2) + "\n";
}

EvaluationInput load_input(const RunManifest& m, std::size_t jobs) {
  EvaluationInput input;
  input.phase_count = m.phase_count;
  input.run_ids = m.run_ids;
  input.split = m.split;
  input.videos.resize(m.videos.size());
  parallel_for(m.videos.size(), jobs, [&](std::size_t i) {
    const auto& mv = m.videos[i];
    auto& entry = input.videos[i];
    entry.video_id = mv.id;
    entry.annotation = load_labels(mv.annotation);
    for (const auto& run : m.run_ids) entry.runs.push_back(load_labels(mv.predictions.at(run)));
  });
  validate_input(input);
  return input;
}

}  // namespace phaseeval
