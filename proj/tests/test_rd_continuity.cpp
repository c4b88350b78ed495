#include <doctest.h>

#include <cmath>
#include <vector>

#include "tscal/rd_continuity.hpp"

using namespace tscal;

namespace {

GridPtr grid_over(const TimeScale& T, double a, double b, double h) {
  return make_grid(TsInterval(T, a, b), h);
}

// Recomputes, ball by ball, that every charged node pair stays below
// eps.  A node is charged once the ball reaches it, or earlier once the
// ball covers continuum past the midpoint toward it.  At a scattered
// center the two sides are disjoint: the jump at the center itself is
// invisible.
bool partition_sound(std::span<const GridFunction> family,
                     const RdPartition& part) {
  const Grid& g = *family.front().grid;
  const auto& t = g.nodes();
  const std::size_t n = g.size();
  for (std::size_t k = 0; k < part.centers.size(); ++k) {
    const double tau = part.centers[k];
    const double del = part.radii[k];
    const std::size_t ci = g.index_of(tau);
    std::vector<std::size_t> left, right;
    right.push_back(ci);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == ci) continue;
      double dist = std::abs(t[j] - tau);
      const bool toward_left = j < ci;
      // Nearest in-segment bracket: the far node answers for covered
      // continuum past the midpoint.
      if (toward_left && j + 1 <= ci && !g.gap_after(j))
        dist = std::min(dist, tau - 0.5 * (t[j] + t[j + 1]));
      if (!toward_left && j >= 1 && !g.gap_after(j - 1))
        dist = std::min(dist, 0.5 * (t[j] + t[j - 1]) - tau);
      if (dist < del) (toward_left ? left : right).push_back(j);
    }
    const bool scattered = g.right_scattered(ci);
    auto worst = [&](const std::vector<std::size_t>& set) {
      double w = 0;
      for (std::size_t a : set)
        for (std::size_t b : set) w = std::max(w, family_gap(family, a, b));
      return w;
    };
    if (scattered) {
      if (worst(left) >= part.epsilon || worst(right) >= part.epsilon)
        return false;
    } else {
      std::vector<std::size_t> all = left;
      all.insert(all.end(), right.begin(), right.end());
      if (worst(all) >= part.epsilon) return false;
    }
  }
  return true;
}

// Every window point must lie strictly inside some ball.
bool covers(const RdPartition& part, const TimeScale& S, double a, double b,
            int samples = 997) {
  for (int s = 0; s <= samples; ++s) {
    const double raw = a + (b - a) * s / samples;
    double x = raw;
    bool member = true;
    {  // project onto the scale from below when raw falls in a gap
      member = false;
      for (const Segment& seg : S.segments()) {
        if (raw < seg.lo) break;
        x = std::min(raw, seg.hi);
        member = true;
      }
      if (!member) continue;
    }
    bool hit = false;
    for (std::size_t k = 0; k < part.centers.size() && !hit; ++k)
      hit = std::abs(x - part.centers[k]) < part.radii[k];
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smooth functions certify and the certificate is sound") {
  const TimeScale T({{0, 1}, {2, 3}});
  auto g = grid_over(T, 0, 3, 1.0 / 64);
  std::vector<GridFunction> fam{
      sample_scalar(g, [](double t) { return std::sin(t); }),
      sample_scalar(g, [](double t) { return std::cos(t); })};
  for (double eps : {0.3, 0.05}) {
    const auto res = certify_rd_continuity(
        std::span<const GridFunction>(fam.data(), fam.size()), eps);
    REQUIRE(std::holds_alternative<RdPartition>(res));
    const auto& part = std::get<RdPartition>(res);
    CHECK(part.centers.front() == 0.0);
    CHECK(part.centers.back() == 3.0);
    CHECK(partition_sound(fam, part));
    CHECK(covers(part, T.restricted(0, 3), 0, 3));
  }
}

TEST_CASE("jump at a left-dense scattered point certifies on the full scale") {
  // Step up exactly at t = 1.  On [0,1] u [2,3] the point 1 is right
  // scattered, so the one sided jump is invisible and the function is
  // rd-continuous.
  const TimeScale T({{0, 1}, {2, 3}});
  const double h = 1.0 / 32;
  auto g = grid_over(T, 0, 3, h);
  const GridFunction u =
      sample_scalar(g, [](double t) { return t < 1.0 ? 0.0 : 1.0; });
  const auto res = check_rd_continuity(u, 0.5);
  REQUIRE(std::holds_alternative<RdPartition>(res));
  const auto& part = std::get<RdPartition>(res);
  std::vector<GridFunction> fam{u};
  CHECK(partition_sound(fam, part));
  CHECK(covers(part, T.restricted(0, 3), 0, 3));
}

TEST_CASE("the same jump fails once the maximum becomes right-dense") {
  // Restricted to [0, 1], sigma(1) = 1: continuity at 1 is now
  // required, and the cover stalls at the midpoint of the last cell.
  const TimeScale T({{0, 1}, {2, 3}});
  const double h = 1.0 / 32;
  auto g = grid_over(T, 0, 1, h);
  const GridFunction u =
      sample_scalar(g, [](double t) { return t < 1.0 ? 0.0 : 1.0; });
  const auto res = check_rd_continuity(u, 0.5);
  REQUIRE(std::holds_alternative<RdViolation>(res));
  const auto& v = std::get<RdViolation>(res);
  CHECK(v.location == doctest::Approx(1.0 - h / 2));
  CHECK(v.node_s == doctest::Approx(1.0 - h));
  CHECK(v.node_t == 1.0);
  CHECK(v.gap == 1.0);
}

TEST_CASE("jump hidden inside a gap certifies") {
  const TimeScale T({{0, 1}, {2, 3}});
  auto g = grid_over(T, 0, 3, 0.125);
  const GridFunction u =
      sample_scalar(g, [](double t) { return t < 1.5 ? 0.0 : 1.0; });
  const auto res = check_rd_continuity(u, 0.25);
  REQUIRE(std::holds_alternative<RdPartition>(res));
  std::vector<GridFunction> fam{u};
  CHECK(partition_sound(fam, std::get<RdPartition>(res)));
}

TEST_CASE("near-constant families take the fast path") {
  const TimeScale T({{0, 5}});
  auto g = grid_over(T, 0, 5, 0.5);
  std::vector<GridFunction> fam{
      sample_scalar(g, [](double) { return 2.0; }),
      sample_scalar(g, [](double t) { return 2.0 + 1e-6 * std::sin(t); })};
  const auto res = certify_rd_continuity(
      std::span<const GridFunction>(fam.data(), fam.size()), 0.1);
  REQUIRE(std::holds_alternative<RdPartition>(res));
  const auto& part = std::get<RdPartition>(res);
  CHECK(part.centers.size() == 2);
  CHECK(covers(part, T.restricted(0, 5), 0, 5));
}

TEST_CASE("single node windows certify trivially") {
  const TimeScale T({{0, 0}});
  auto g = make_grid(TsInterval(T, 0, 0), 1.0);
  const GridFunction u{g, Eigen::MatrixXd::Constant(1, 1, 7.0)};
  const auto res = check_rd_continuity(u, 0.1);
  REQUIRE(std::holds_alternative<RdPartition>(res));
  CHECK(std::get<RdPartition>(res).centers.size() == 1);
}

TEST_CASE("validation") {
  const TimeScale T({{0, 1}});
  auto g = grid_over(T, 0, 1, 0.25);
  const GridFunction u = sample_scalar(g, [](double t) { return t; });
  CHECK_THROWS_AS(check_rd_continuity(u, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(certify_rd_continuity({}, 0.1), std::invalid_argument);
  auto g2 = grid_over(T, 0, 1, 0.5);
  const GridFunction w = sample_scalar(g2, [](double t) { return t; });
  std::vector<GridFunction> fam{u, w};
  CHECK_THROWS_AS(certify_rd_continuity(
                      std::span<const GridFunction>(fam.data(), fam.size()),
                      0.1),
                  std::invalid_argument);
}

TEST_CASE("family gap is the worst member spread") {
  const TimeScale T = TimeScale::discrete(0, 3);
  auto g = grid_over(T, 0, 3, 1.0);
  std::vector<GridFunction> fam{
      sample_scalar(g, [](double t) { return t; }),
      sample_scalar(g, [](double t) { return -2.0 * t; })};
  CHECK(family_gap(std::span<const GridFunction>(fam.data(), fam.size()), 0,
                   3) == 6.0);
}

TEST_CASE("equicontinuity knots bound the family variation per cell") {
  const TimeScale T({{0, 1}, {2, 3}});
  auto g = grid_over(T, 0, 3, 1.0 / 64);
  std::vector<GridFunction> fam{
      sample_scalar(g, [](double t) { return std::sin(2 * t); }),
      sample_scalar(g, [](double t) { return 0.5 * std::cos(t); })};
  const double eps = 0.2;
  const auto res = equicontinuity_partition(
      std::span<const GridFunction>(fam.data(), fam.size()), eps);
  REQUIRE(std::holds_alternative<std::vector<double>>(res));
  const auto& knots = std::get<std::vector<double>>(res);
  REQUIRE(knots.size() >= 2);
  CHECK(knots.front() == 0.0);
  CHECK(knots.back() == 3.0);
  for (std::size_t k = 0; k + 1 < knots.size(); ++k)
    CHECK(knots[k] < knots[k + 1]);

  // Brute force: every node pair inside one half-open cell stays under
  // eps.
  const auto& t = g->nodes();
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < knots[k] || t[i] >= knots[k + 1]) continue;
      for (std::size_t j = i; j < t.size(); ++j) {
        if (t[j] < knots[k] || t[j] >= knots[k + 1]) continue;
        CHECK(family_gap(std::span<const GridFunction>(fam.data(),
                                                       fam.size()),
                         i, j) < eps);
      }
    }
  }
}

TEST_CASE("equicontinuity passes the violation through") {
  const TimeScale T({{0, 1}});
  auto g = grid_over(T, 0, 1, 1.0 / 16);
  std::vector<GridFunction> fam{
      sample_scalar(g, [](double t) { return t < 1.0 ? 0.0 : 1.0; })};
  const auto res = equicontinuity_partition(
      std::span<const GridFunction>(fam.data(), fam.size()), 0.5);
  REQUIRE(std::holds_alternative<RdViolation>(res));
}
