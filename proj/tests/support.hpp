#pragma once

// Helpers shared by the unit and acceptance tests: random corpora, conversion
// between library and oracle types, and comparisons of summaries.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "phaseeval/aggregate.hpp"
#include "phaseeval/input.hpp"
#include "phaseeval/metrics.hpp"

namespace testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  bool chance(double p) { return real() < p; }

 private:
  std::mt19937_64 gen_;
};

/// Segments of random phases, each at least `min_segment` frames long.
inline oracle::Labels segmented(Rng& rng, int length, int phases, int min_segment = 1, int max_segment = 30) {
  oracle::Labels out;
  int prev = -1;
  while (int(out.size()) < length) {
    int p = rng.uniform(0, phases - 1);
    if (phases > 1)
      while (p == prev) p = rng.uniform(0, phases - 1);
    int len = rng.uniform(min_segment, std::max(min_segment, max_segment));
    for (int i = 0; i < len; ++i) out.push_back(p);
    prev = p;
  }
  out.resize(std::size_t(length));
  // a cut-off trailing segment shorter than min_segment joins its predecessor
  std::size_t tail = out.size() - 1;
  while (tail > 0 && out[tail - 1] == out.back()) --tail;
  if (tail > 0 && int(out.size() - tail) < min_segment)
    for (std::size_t t = tail; t < out.size(); ++t) out[t] = out[tail - 1];
  return out;
}

/// A noisy copy of the annotation: boundaries nudged, frames flipped.
inline oracle::Labels perturb(Rng& rng, const oracle::Labels& y, int phases, double flip_rate) {
  oracle::Labels out = y;
  for (std::size_t t = 1; t < y.size(); ++t)
    if (y[t] != y[t - 1] && rng.chance(0.5)) {
      const int k = rng.uniform(1, 3);
      for (int j = 0; j < k && t + std::size_t(j) < y.size(); ++j) out[t + std::size_t(j)] = y[t - 1];
    }
  for (auto& x : out)
    if (rng.chance(flip_rate)) x = rng.uniform(0, phases - 1);
  return out;
}

/// T <= max_t frames, up to max_videos videos and max_runs runs.
inline oracle::Corpus random_corpus(Rng& rng, int phases = 7, int max_videos = 20, int max_runs = 5,
                                    int max_t = 200, int min_segment = 1) {
  oracle::Corpus c;
  c.phase_count = phases;
  const int V = rng.uniform(1, max_videos), R = rng.uniform(1, max_runs);
  for (int v = 0; v < V; ++v) {
    const int T = rng.uniform(std::min(max_t, std::max(1, min_segment)), max_t);
    c.annotations.push_back(segmented(rng, T, phases, min_segment, std::max(min_segment, T / 3)));
    std::vector<oracle::Labels> runs;
    const double flips = rng.real() * 0.4;
    for (int r = 0; r < R; ++r) runs.push_back(perturb(rng, c.annotations.back(), phases, flips));
    c.runs.push_back(std::move(runs));
  }
  return c;
}

inline std::vector<phaseeval::PhaseId> to_ids(const oracle::Labels& xs) {
  return std::vector<phaseeval::PhaseId>(xs.begin(), xs.end());
}

inline oracle::Labels to_labels(const std::vector<phaseeval::PhaseId>& xs) {
  return oracle::Labels(xs.begin(), xs.end());
}

inline phaseeval::EvaluationInput to_input(const oracle::Corpus& c) {
  phaseeval::EvaluationInput in;
  in.phase_count = std::size_t(c.phase_count);
  for (std::size_t r = 0; r < c.runs[0].size(); ++r) in.run_ids.push_back("r" + std::to_string(r));
  for (std::size_t v = 0; v < c.annotations.size(); ++v) {
    phaseeval::VideoEntry e;
    e.video_id = int(v) + 1;
    e.annotation = phaseeval::LabelSequence(to_ids(c.annotations[v]));
    for (const auto& run : c.runs[v]) e.runs.emplace_back(to_ids(run));
    in.videos.push_back(std::move(e));
  }
  return in;
}

inline oracle::Policy to_oracle(phaseeval::UndefinedPolicy p) {
  switch (p) {
    case phaseeval::UndefinedPolicy::ExcludeUndefined: return oracle::Policy::ExcludeUndefined;
    case phaseeval::UndefinedPolicy::ExcludeMissingPhase: return oracle::Policy::ExcludeMissingPhase;
    case phaseeval::UndefinedPolicy::ZeroFill: return oracle::Policy::ZeroFill;
    case phaseeval::UndefinedPolicy::OneFill: return oracle::Policy::OneFill;
  }
  return oracle::Policy::ExcludeUndefined;
}

inline oracle::Order to_oracle(phaseeval::AveragingOrder o) {
  switch (o) {
    case phaseeval::AveragingOrder::Flat: return oracle::Order::Flat;
    case phaseeval::AveragingOrder::PhaseFirstThenVideo: return oracle::Order::PhaseFirst;
    case phaseeval::AveragingOrder::VideoFirstThenPhase: return oracle::Order::VideoFirst;
  }
  return oracle::Order::Flat;
}

inline oracle::Kind to_oracle(phaseeval::MetricKind k) {
  switch (k) {
    case phaseeval::MetricKind::Precision: return oracle::Kind::Precision;
    case phaseeval::MetricKind::Recall: return oracle::Kind::Recall;
    case phaseeval::MetricKind::F1: return oracle::Kind::F1;
    case phaseeval::MetricKind::Jaccard: return oracle::Kind::Jaccard;
  }
  return oracle::Kind::Precision;
}

inline bool close(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::fabs(*a - *b) <= tol;
}

inline bool same_stats(const phaseeval::Summary& s, const oracle::Stats& o, double tol) {
  return close(s.mean, o.mean, tol) && close(s.sd_videos, o.sd_videos, tol) &&
         close(s.sd_phases, o.sd_phases, tol) && close(s.sd_runs, o.sd_runs, tol);
}

inline std::string describe(const std::optional<double>& x) {
  return x ? std::to_string(*x) : std::string("n/a");
}

inline std::string describe(const phaseeval::Summary& s) {
  return "M=" + describe(s.mean) + " SD_V=" + describe(s.sd_videos) + " SD_P=" + describe(s.sd_phases) +
         " SD_R=" + describe(s.sd_runs);
}

inline std::string describe(const oracle::Stats& s) {
  return "M=" + describe(s.mean) + " SD_V=" + describe(s.sd_videos) + " SD_P=" + describe(s.sd_phases) +
         " SD_R=" + describe(s.sd_runs);
}

// The 18-frame worked example: annotation and prediction.
inline const oracle::Labels kExampleAnnotation = {3, 3, 3, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6};
inline const oracle::Labels kExamplePrediction = {3, 5, 4, 4, 3, 3, 3, 4, 6, 3, 4, 4, 6, 5, 6, 5, 4, 6};
inline const std::vector<bool> kExampleFlags = {true, true, true, true,  true,  false, false, true, true,
                                                true, true, false, false, true, true,  true,  true, true};

}  // namespace testing
