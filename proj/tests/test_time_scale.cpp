#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tscal/time_scale.hpp"

using namespace tscal;

namespace {
TimeScale two_islands() { return TimeScale({{0, 1}, {2, 3}}); }
TimeScale with_point() { return TimeScale({{0, 1}, {2, 3}, {5, 5}}); }
}  // namespace

TEST_CASE("construction canonicalizes segments") {
  const TimeScale a({{0.5, 2}, {0, 1}});
  REQUIRE(a.segments().size() == 1);
  CHECK(a.segments()[0].lo == 0);
  CHECK(a.segments()[0].hi == 2);

  const TimeScale touching({{0, 1}, {1, 2}});
  CHECK(touching.segments().size() == 1);

  const TimeScale kept({{2, 3}, {0, 1}});
  REQUIRE(kept.segments().size() == 2);
  CHECK(kept.segments()[0].lo == 0);
  CHECK(kept.segments()[1].lo == 2);
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(TimeScale({}), std::invalid_argument);
  CHECK_THROWS_AS(TimeScale({{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(TimeScale({{0, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("jump operators") {
  const TimeScale T = with_point();
  CHECK(T.sigma(0.5) == 0.5);
  CHECK(T.sigma(1) == 2);
  CHECK(T.sigma(3) == 5);
  CHECK(T.sigma(5) == 5);  // forward jump at the maximum
  CHECK(T.rho(0) == 0);    // backward jump at the minimum
  CHECK(T.rho(2) == 1);
  CHECK(T.rho(5) == 3);
  CHECK(T.rho(2.5) == 2.5);
  CHECK(T.graininess(1) == 1);
  CHECK(T.graininess(0.25) == 0);
}

TEST_CASE("point classification") {
  const TimeScale T = with_point();
  CHECK_FALSE(T.classify(0.5).right_scattered());
  CHECK_FALSE(T.classify(0.5).left_scattered());
  CHECK(T.classify(1).right_scattered());
  CHECK_FALSE(T.classify(1).left_scattered());
  CHECK_FALSE(T.classify(2).right_scattered());
  CHECK(T.classify(2).left_scattered());
  // Maximum: forward jump is the identity, so the right side is dense.
  CHECK_FALSE(T.classify(5).right_scattered());
  CHECK(T.classify(5).left_scattered());
}

TEST_CASE("kappa drops a left-scattered maximum") {
  const TimeScale T = with_point();
  const TimeScale K = T.kappa();
  REQUIRE(K.segments().size() == 2);
  CHECK(K.max() == 3);
  CHECK(two_islands().kappa() == two_islands());
  // A single isolated point stays: nothing is left to drop onto.
  const TimeScale single({{4, 4}});
  CHECK(single.kappa() == single);
}

TEST_CASE("membership and snapping") {
  const TimeScale T = two_islands();
  CHECK(T.contains(0.25));
  CHECK_FALSE(T.contains(1.5));
  CHECK(T.snap(1 + 1e-13) == 1);
  CHECK(T.snap(2 - 1e-13) == 2);
  CHECK(T.snap(0.37) == 0.37);
  CHECK_THROWS_AS(T.snap(1.5), std::invalid_argument);
  CHECK_THROWS_AS(T.snap(-0.5), std::invalid_argument);
}

TEST_CASE("restriction clips segments") {
  const TimeScale T = two_islands();
  const TimeScale R = T.restricted(0.5, 2.5);
  REQUIRE(R.segments().size() == 2);
  CHECK(R.segments()[0].lo == 0.5);
  CHECK(R.segments()[0].hi == 1);
  CHECK(R.segments()[1].lo == 2);
  CHECK(R.segments()[1].hi == 2.5);
  CHECK_THROWS_AS(T.restricted(1.2, 2.5), std::invalid_argument);
}

TEST_CASE("discrete factory has no accumulation drift") {
  const TimeScale D = TimeScale::discrete(0, 1, 0.1);
  REQUIRE(D.segments().size() == 11);
  CHECK(D.max() == 1.0);  // exact, not 0.1 summed ten times
  const TimeScale I = TimeScale::discrete(0, 5);
  CHECK(I.segments().size() == 6);
  CHECK(I.sigma(2) == 3);
}

TEST_CASE("window right endpoint is right-dense by convention") {
  const TsInterval w(two_islands(), 0, 1);
  CHECK(w.sigma(1) == 1);
  CHECK(w.graininess(1) == 0);
  CHECK(w.parent().sigma(1) == 2);
  const TsInterval full(two_islands(), 0, 3);
  CHECK(full.sigma(1) == 2);  // interior jump survives the clipping
}

TEST_CASE("text round trip") {
  const TimeScale T = with_point();
  std::stringstream ss;
  write_scale_text(ss, T);
  const TimeScale back = read_scale_text(ss);
  CHECK(back == T);

  std::stringstream cmt("# islands\n0 1\n\n2 3 # tail\n");
  const TimeScale c = read_scale_text(cmt);
  CHECK(c == two_islands());

  std::stringstream bad("0\n");
  CHECK_THROWS_AS(read_scale_text(bad), std::invalid_argument);
}
