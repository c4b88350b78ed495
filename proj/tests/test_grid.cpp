#include <doctest.h>

#include <cmath>

#include "tscal/grid.hpp"

using namespace tscal;

TEST_CASE("grid nodes per segment, exact endpoints") {
  const TimeScale T({{0, 1}, {2, 3}});
  const Grid g = build_grid(TsInterval(T, 0, 3), 0.25);
  REQUIRE(g.size() == 10);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(4) == 1.0);
  CHECK(g.node(5) == 2.0);
  CHECK(g.node(9) == 3.0);
  CHECK(g.gap_after(4));
  CHECK_FALSE(g.gap_after(3));
  CHECK(g.segment_of(4) == 0);
  CHECK(g.segment_of(5) == 1);
}

TEST_CASE("dense spacing never exceeds the request") {
  const TimeScale T({{0, 1}});
  const Grid g = build_grid(TsInterval(T, 0, 1), 0.3);
  REQUIRE(g.size() == 5);  // ceil(1 / 0.3) = 4 cells
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    CHECK(g.node(i + 1) - g.node(i) <= 0.3);
  CHECK(g.node(4) == 1.0);
}

TEST_CASE("isolated points become single nodes") {
  const TimeScale T({{0, 1}, {2, 2}, {3, 4}});
  const Grid g = build_grid(TsInterval(T, 0, 4), 0.5);
  const auto i2 = g.index_of(2.0);
  CHECK(g.gap_after(i2));
  CHECK(g.gap_after(i2 - 1));
  CHECK(g.node(i2) == 2.0);
}

TEST_CASE("grid constructor validates its node list") {
  const TimeScale T({{0, 1}, {2, 3}});
  const TsInterval iv(T, 0, 3);
  CHECK_THROWS_AS(Grid(iv, {0.0, 0.5, 2.0, 3.0}, 0.5),
                  std::invalid_argument);  // endpoint 1 missing
  CHECK_THROWS_AS(Grid(iv, {0.0, 1.0, 1.5, 2.0, 3.0}, 0.5),
                  std::invalid_argument);  // 1.5 is not in the scale
  CHECK_THROWS_AS(Grid(iv, {0.0, 1.0, 0.5, 2.0, 3.0}, 0.5),
                  std::invalid_argument);  // not increasing
  CHECK_NOTHROW(Grid(iv, {0.0, 0.5, 1.0, 2.0, 3.0}, 0.5));
}

TEST_CASE("index lookup snaps within tolerance") {
  const TimeScale T({{0, 1}});
  const Grid g = build_grid(TsInterval(T, 0, 1), 0.25);
  CHECK(g.index_of(0.5) == 2);
  CHECK(g.index_of(0.5 + 1e-13) == 2);
  CHECK_THROWS_AS(g.index_of(0.3), std::invalid_argument);
}

TEST_CASE("grid functions validate shape and sample callables") {
  const TimeScale T({{0, 2}});
  auto g = make_grid(TsInterval(T, 0, 2), 0.5);
  CHECK_THROWS_AS(GridFunction(g, Eigen::MatrixXd::Zero(3, 1)),
                  std::invalid_argument);

  const GridFunction u = sample_scalar(g, [](double t) { return t * t; });
  CHECK(u.dim() == 1);
  CHECK(u.values(2, 0) == 1.0);

  const GridFunction v = sample(g, [](double t) {
    return Eigen::Vector2d(t, -t);
  });
  CHECK(v.dim() == 2);
  CHECK(v.values(4, 1) == -2.0);

  CHECK(same_grid(u, v));
  auto g2 = make_grid(TsInterval(T, 0, 2), 0.5);
  const GridFunction w = sample_scalar(g2, [](double t) { return t; });
  CHECK(same_grid(u, w));  // equal node sets, different owners
  auto g3 = make_grid(TsInterval(T, 0, 2), 0.25);
  const GridFunction x = sample_scalar(g3, [](double t) { return t; });
  CHECK_FALSE(same_grid(u, x));
}
