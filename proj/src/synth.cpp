#include "phaseeval/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <random>

#include "phaseeval/evaluate.hpp"
#include "phaseeval/io.hpp"

namespace phaseeval {

namespace {

// Standard distributions are implementation-defined, so bounded draws are
// done by hand to keep corpora identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

LabelSequence annotation_walk(const WorkflowGraph& graph, const SynthConfig& c, Rng& rng) {
  std::vector<PhaseId> labels;
  PhaseId phase = 0;
  const auto last = static_cast<PhaseId>(c.phase_count - 1);
  for (std::size_t s = 0; s < c.max_segments; ++s) {
    labels.insert(labels.end(), rng.between(c.min_length, c.max_length), phase);
    const auto next = graph.successors(phase);
    if (next.empty() || (phase == last && rng.chance(0.75))) break;
    auto it = next.begin();
    std::advance(it, static_cast<long>(rng.below(next.size())));
    phase = *it;
  }
  return LabelSequence(std::move(labels));
}

LabelSequence perturb(const LabelSequence& annotation, const SynthConfig& c, Rng& rng) {
  auto labels = annotation.labels;
  const auto segments = extract_segments(annotation);
  for (std::size_t k = 0; k + 1 < segments.size(); ++k) {
    const auto& left = segments[k];
    const auto& right = segments[k + 1];
    const std::size_t limit =
        std::min({c.boundary_shift, (left.length() - 1) / 2, (right.length() - 1) / 2});
    if (limit == 0) continue;
    const std::size_t shift = rng.between(0, limit);
    if (shift == 0) continue;
    if (rng.chance(0.5)) {
      for (std::size_t t = right.start - shift; t < right.start; ++t) labels[t] = right.phase;
    } else {
      for (std::size_t t = right.start; t < right.start + shift; ++t) labels[t] = left.phase;
    }
  }
  if (c.flip_rate > 0.0 && c.phase_count > 1) {
    for (auto& label : labels) {
      if (!rng.chance(c.flip_rate)) continue;
      auto other = static_cast<PhaseId>(rng.below(c.phase_count - 1));
      label = other >= label ? other + 1 : other;
    }
  }
  return LabelSequence(std::move(labels));
}

}  // namespace

void validate_config(const SynthConfig& c) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (c.phase_count < 1) bad("phase count must be at least 1");
  if (c.videos < 1) bad("at least one video is required");
  if (c.runs < 1) bad("at least one run is required");
  if (c.min_length < 1 || c.min_length > c.max_length) bad("segment lengths need 1 <= min <= max");
  if (c.max_segments < 1) bad("at least one segment is required");
  if (!(c.flip_rate >= 0.0 && c.flip_rate <= 1.0)) bad("flip rate must lie in [0, 1]");
}

EvaluationInput synthesize(const SynthConfig& c) {
  validate_config(c);
  const auto graph = default_graph(c.phase_count);
  EvaluationInput input;
  input.phase_count = c.phase_count;
  for (std::size_t r = 0; r < c.runs; ++r) input.run_ids.push_back("r" + std::to_string(r));
  for (std::size_t v = 0; v < c.videos; ++v) {
    const std::uint64_t video_seed = mix(c.seed ^ mix(v + 1));
    Rng rng(video_seed);
    VideoEntry entry;
    entry.video_id = c.first_video_id + static_cast<VideoId>(v);
    entry.annotation = annotation_walk(graph, c, rng);
    for (std::size_t r = 0; r < c.runs; ++r) {
      Rng run_rng(mix(video_seed ^ mix(r + 0x51ed)));
      entry.runs.push_back(perturb(entry.annotation, c, run_rng));
    }
    input.videos.push_back(std::move(entry));
  }
  return input;
}

std::string write_corpus(const EvaluationInput& input, const std::string& out_dir) {
  namespace fs = std::filesystem;
  RunManifest m;
  m.phase_count = input.phase_count;
  m.split = input.split;
  m.run_ids = input.run_ids;
  for (const auto& v : input.videos) {
    ManifestVideo mv;
    mv.id = v.video_id;
    const std::string name = "video" + std::to_string(v.video_id) + ".txt";
    mv.annotation = "annotations/" + name;
    write_labels((fs::path(out_dir) / mv.annotation).string(), v.annotation);
    for (std::size_t r = 0; r < input.run_ids.size(); ++r) {
      const std::string rel = "predictions/" + input.run_ids[r] + "/" + name;
      write_labels((fs::path(out_dir) / rel).string(), v.runs[r]);
      mv.predictions[input.run_ids[r]] = rel;
    }
    m.videos.push_back(std::move(mv));
  }
  const auto path = (fs::path(out_dir) / "manifest.json").string();
  write_text_file(path, format_manifest(m));
  return path;
}

}  // namespace phaseeval
