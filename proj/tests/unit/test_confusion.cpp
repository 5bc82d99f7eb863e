#include "doctest.h"
#include "phaseeval/confusion.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace phaseeval;

namespace {

std::vector<PhaseId> ids(std::initializer_list<PhaseId> xs) { return xs; }

}  // namespace

TEST_CASE("confusion counts frames by (annotated, predicted)") {
  const auto c = confusion_of(ids({0, 0, 1, 1, 2}), ids({0, 1, 1, 2, 2}), 3);
  CHECK(c.total() == 5);
  for (PhaseId p = 0; p < 3; ++p)
    for (PhaseId q = 0; q < 3; ++q) {
      const bool hit = (p == 0 && q <= 1) || (p == 1 && q >= 1) || (p == 2 && q == 2);
      CHECK(c.at(p, q) == (hit ? 1u : 0u));
    }
  CHECK(c.trace() == 3);
  CHECK(phase_counts(c, 1) == PhaseCounts{1, 1, 1});
  CHECK(c.row_sum(0) == 2);
  CHECK(c.column_sum(2) == 2);
}

TEST_CASE("perfect prediction gives a diagonal matrix") {
  const auto y = ids({0, 3, 3, 6, 2});
  const auto c = confusion_of(y, y, 7);
  CHECK(c.trace() == 5);
  for (PhaseId p = 0; p < 7; ++p) CHECK(phase_counts(c, p) == PhaseCounts{c.at(p, p), 0, 0});
  CHECK(phase_counts(c, 5) == PhaseCounts{0, 0, 0});
}

TEST_CASE("confusion guards") {
  CHECK_THROWS_AS(confusion_of(ids({0, 0, 1, 1, 2}), ids({0, 1, 1, 2}), 3), LengthMismatchError);
  CHECK_THROWS_AS(confusion_of(ids({0, 3}), ids({0, 1}), 3), OutOfRangeLabelError);
  CHECK_THROWS_AS(confusion_of(ids({0, 1}), ids({0, 9}), 3), OutOfRangeLabelError);
}

TEST_CASE("sum_confusions is element-wise") {
  const auto m = confusion_of(ids({0, 0, 1, 1, 2}), ids({0, 1, 1, 2, 2}), 3);
  const ConfusionMatrix zero(3);
  std::vector<ConfusionMatrix> with_zero = {m, zero};
  CHECK(sum_confusions(with_zero) == m);
  std::vector<ConfusionMatrix> twice = {m, m};
  const auto d = sum_confusions(twice);
  CHECK(d.total() == 10);
  for (PhaseId p = 0; p < 3; ++p)
    for (PhaseId q = 0; q < 3; ++q) CHECK(d.at(p, q) == 2 * m.at(p, q));
  std::vector<ConfusionMatrix> mixed = {ConfusionMatrix(7), ConfusionMatrix(6)};
  try {
    sum_confusions(mixed);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("confusion entries agree with frame counting on random pairs") {
  testing::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const int T = rng.uniform(1, 200);
    const auto y = testing::segmented(rng, T, 7);
    const auto yhat = testing::perturb(rng, y, 7, 0.3);
    const auto c = confusion_of(testing::to_ids(y), testing::to_ids(yhat), 7);
    for (int p = 0; p < 7; ++p)
      for (int q = 0; q < 7; ++q) {
        std::uint64_t n = 0;
        for (int t = 0; t < T; ++t) n += y[std::size_t(t)] == p && yhat[std::size_t(t)] == q;
        REQUIRE(c.at(PhaseId(p), PhaseId(q)) == n);
      }
  }
}
