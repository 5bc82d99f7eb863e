#include <cmath>

#include "doctest.h"
#include "phaseeval/aggregate.hpp"
#include "support.hpp"

using namespace phaseeval;

namespace {

// rows are videos, columns phases; negative means Excluded
ResultTensor grid_tensor(const std::vector<std::vector<double>>& rows) {
  const std::size_t V = rows.size(), P = rows[0].size();
  std::vector<PhaseId> phases;
  std::vector<VideoId> videos;
  for (std::size_t p = 0; p < P; ++p) phases.push_back(PhaseId(p));
  for (std::size_t v = 0; v < V; ++v) videos.push_back(VideoId(v));
  ResultTensor t(phases, videos, {"r0"});
  for (std::size_t v = 0; v < V; ++v)
    for (std::size_t p = 0; p < P; ++p)
      t.at(p, v, 0) = rows[v][p] < 0 ? MetricCell::excluded() : MetricCell::defined(rows[v][p]);
  return t;
}

ResultTensor random_tensor(testing::Rng& rng, oracle::Grid& grid) {
  const int P = rng.uniform(1, 7), V = rng.uniform(1, 20), R = rng.uniform(1, 5);
  std::vector<PhaseId> phases;
  std::vector<VideoId> videos;
  std::vector<std::string> runs;
  for (int p = 0; p < P; ++p) phases.push_back(PhaseId(p));
  for (int v = 0; v < V; ++v) videos.push_back(v);
  for (int r = 0; r < R; ++r) runs.push_back("r" + std::to_string(r));
  ResultTensor t(phases, videos, runs);
  grid.assign(std::size_t(P), std::vector<std::vector<oracle::Value>>(std::size_t(V), std::vector<oracle::Value>(std::size_t(R))));
  const double hole = rng.real() * 0.5;
  for (int p = 0; p < P; ++p)
    for (int v = 0; v < V; ++v)
      for (int r = 0; r < R; ++r) {
        if (rng.chance(hole)) {
          t.at(std::size_t(p), std::size_t(v), std::size_t(r)) = rng.chance(0.5) ? MetricCell::excluded() : MetricCell::undefined();
          continue;
        }
        const double x = rng.real();
        t.at(std::size_t(p), std::size_t(v), std::size_t(r)) = MetricCell::defined(x);
        grid[std::size_t(p)][std::size_t(v)][std::size_t(r)] = x;
      }
  return t;
}

}  // namespace

TEST_CASE("mean_cells") {
  const std::vector<MetricCell> a = {MetricCell::defined(0.2), MetricCell::defined(0.15), MetricCell::defined(0.2)};
  CHECK(mean_cells(a).value() == doctest::Approx(0.55 / 3).epsilon(1e-15));
  const std::vector<MetricCell> b = {MetricCell::defined(0.1), MetricCell::excluded(), MetricCell::defined(0.3)};
  CHECK(mean_cells(b).value() == doctest::Approx(0.2));
  const std::vector<MetricCell> none = {MetricCell::excluded(), MetricCell::undefined()};
  CHECK(mean_cells(none).is_excluded());
}

TEST_CASE("averaging order changes the mean when cells are excluded") {
  const auto t = grid_tensor({{0.1, 0.2, 0.3}, {0.1, 0.2, -1}, {0.1, -1, 0.3}});
  CHECK(ordered_mean(t, AveragingOrder::PhaseFirstThenVideo) == doctest::Approx(11.0 / 60).epsilon(1e-14));
  CHECK(ordered_mean(t, AveragingOrder::VideoFirstThenPhase) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(ordered_mean(t, AveragingOrder::Flat) == doctest::Approx(1.3 / 7).epsilon(1e-14));

  const auto empty = grid_tensor({{-1, -1}});
  CHECK_THROWS_AS(ordered_mean(empty, AveragingOrder::Flat), Error);
}

TEST_CASE("sample standard deviation") {
  const std::vector<double> xs = {1, 2, 3};
  CHECK(sample_std(xs, StdMode::Corrected) == 1.0);
  CHECK(sample_std(xs, StdMode::Uncorrected) == std::sqrt(2.0 / 3.0));
  const std::vector<double> one = {0.5};
  try {
    sample_std(one, StdMode::Corrected, Axis::Videos);
    FAIL("no error");
  } catch (const InsufficientPointsError& e) {
    CHECK(e.axis == Axis::Videos);
    CHECK(e.k == 1);
  }
}

TEST_CASE("constant tensor has zero spreads") {
  ResultTensor t({0, 1, 2}, {1, 2, 3, 4}, {"a", "b"}, MetricCell::defined(0.7));
  const auto s = summarize(t, {});
  CHECK(*s.mean == doctest::Approx(0.7));
  CHECK(*s.sd_videos == doctest::Approx(0.0));
  CHECK(*s.sd_phases == doctest::Approx(0.0));
  CHECK(*s.sd_runs == doctest::Approx(0.0));
}

TEST_CASE("a single run leaves SD_R not applicable") {
  const auto t = grid_tensor({{0.1, 0.2}, {0.3, 0.4}});
  const auto s = summarize(t, {});
  CHECK(s.mean.has_value());
  CHECK(s.sd_videos.has_value());
  CHECK_FALSE(s.sd_runs.has_value());
  const auto single_phase = t.phase_slice(0);
  CHECK(single_phase.phases() == 1);
  CHECK_FALSE(summarize(single_phase, {}).sd_phases.has_value());
  CHECK_THROWS_AS(std_over(t, Axis::Runs, StdMode::Corrected), InsufficientPointsError);
}

TEST_CASE("collapse drops positions without defined cells") {
  const auto t = grid_tensor({{0.1, -1}, {0.3, -1}});
  CHECK(collapse(t, Axis::Phases) == std::vector<double>{0.2});
  CHECK(collapse(t, Axis::Videos).size() == 2);
}

TEST_CASE("tensor shape guards") {
  CHECK_THROWS_AS(ResultTensor({0}, {1}, {}), Error);
  ResultTensor t({0}, {1}, {"r"});
  CHECK_THROWS(t.at(1, 0, 0));
}

TEST_CASE("names round-trip") {
  for (auto m : {StdMode::Corrected, StdMode::Uncorrected}) CHECK(parse_std_mode(to_string(m)) == m);
  for (auto o : {AveragingOrder::Flat, AveragingOrder::PhaseFirstThenVideo, AveragingOrder::VideoFirstThenPhase})
    CHECK(parse_order(to_string(o)) == o);
  CHECK_THROWS_AS(parse_order("sideways"), Error);
}

TEST_CASE("summaries match exhaustive enumeration on random tensors") {
  testing::Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    oracle::Grid grid;
    const auto t = random_tensor(rng, grid);
    for (auto order : {AveragingOrder::Flat, AveragingOrder::PhaseFirstThenVideo, AveragingOrder::VideoFirstThenPhase})
      for (auto mode : {StdMode::Corrected, StdMode::Uncorrected}) {
        const auto want = oracle::stats(grid, testing::to_oracle(order), mode == StdMode::Corrected);
        if (!want.mean) {
          REQUIRE_THROWS_AS(summarize(t, {mode, order}), Error);
          continue;
        }
        const auto got = summarize(t, {mode, order});
        INFO(testing::describe(got), " vs ", testing::describe(want));
        REQUIRE(testing::same_stats(got, want, 1e-12));
      }
  }
}
