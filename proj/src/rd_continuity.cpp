#include "tscal/rd_continuity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "tscal/common.hpp"

namespace tscal {

double family_gap(std::span<const GridFunction> family, std::size_t i,
                  std::size_t j) {
  double g = 0.0;
  for (const GridFunction& u : family)
    g = std::max(g, sup_norm(u.values.row(i) - u.values.row(j)));
  return g;
}

namespace {

// Running componentwise extrema per member over a growing node set.
struct SideStats {
  std::vector<Eigen::RowVectorXd> mn, mx;
  bool any = false;

  void add(std::span<const GridFunction> family, std::size_t j) {
    if (!any) {
      mn.clear();
      mx.clear();
      for (const GridFunction& u : family) {
        mn.push_back(u.values.row(j));
        mx.push_back(u.values.row(j));
      }
      any = true;
      return;
    }
    for (std::size_t m = 0; m < family.size(); ++m) {
      mn[m] = mn[m].cwiseMin(family[m].values.row(j));
      mx[m] = mx[m].cwiseMax(family[m].values.row(j));
    }
  }

  double gap() const {
    if (!any) return 0.0;
    double g = 0.0;
    for (std::size_t m = 0; m < mn.size(); ++m)
      g = std::max(g, (mx[m] - mn[m]).maxCoeff());
    return g;
  }

  double gap_with(const SideStats& o) const {
    if (!any) return o.gap();
    if (!o.any) return gap();
    double g = 0.0;
    for (std::size_t m = 0; m < mn.size(); ++m)
      g = std::max(g, (mx[m].cwiseMax(o.mx[m]) - mn[m].cwiseMin(o.mn[m]))
                          .maxCoeff());
    return g;
  }
};

// Lazy stream of charge events on one side of a center, ordered by
// distance.  A node is charged when the open ball reaches it, or earlier,
// when the ball covers continuum past the midpoint toward it.
struct SideEvents {
  const Grid* grid;
  double tau;
  std::size_t next;  // node index the upcoming events refer to
  bool leftward;
  // Pending second event of a (midpoint, node) pair.
  std::optional<std::pair<double, std::size_t>> pending;

  std::optional<std::pair<double, std::size_t>> peek() {
    if (pending) return pending;
    refill();
    return pending;
  }
  void pop() { pending.reset(); }

 private:
  void refill() {
    const auto& t = grid->nodes();
    if (leftward) {
      if (next == 0) return;
      const std::size_t j = next - 1;  // candidate to charge
      const bool same_seg = !grid->gap_after(j);
      if (same_seg) {
        const double mid = 0.5 * (t[j] + t[j + 1]);
        pending = {std::min(tau - mid, tau - t[j]), j};
      } else {
        pending = {tau - t[j], j};
      }
      next = j;
    } else {
      if (next + 1 >= t.size()) return;
      const std::size_t j = next + 1;
      const bool same_seg = !grid->gap_after(next);
      if (same_seg) {
        const double mid = 0.5 * (t[next] + t[j]);
        pending = {std::min(mid - tau, t[j] - tau), j};
      } else {
        pending = {t[j] - tau, j};
      }
      next = j;
    }
  }
};

struct BallLimit {
  double radius;
  // Failing node pair when the radius is capped by a value gap.
  std::size_t fail_a = 0, fail_b = 0;
  bool capped = false;
};

// Largest admissible radius for the ball centered at node ci, plus the
// node pair that caps it.
BallLimit max_radius(std::span<const GridFunction> family, const Grid& grid,
                     std::size_t ci, double eps) {
  const auto& t = grid.nodes();
  const bool scattered = grid.right_scattered(ci);
  SideStats left, right;
  right.add(family, ci);  // the center sits on the weak side

  SideEvents lev{&grid, t[ci], ci, true, std::nullopt};
  SideEvents rev{&grid, t[ci], ci, false, std::nullopt};
  std::size_t lo = ci, hi = ci;  // charged contiguous range

  const double big =
      (t.back() - t.front()) + std::max(1.0, t.back() - t.front());
  double last_ok = big;

  while (true) {
    auto le = lev.peek();
    auto re = rev.peek();
    if (!le && !re) return {last_ok};
    bool take_left = le && (!re || le->first <= re->first);
    const auto [dist, j] = take_left ? *le : *re;
    if (take_left) lev.pop(); else rev.pop();
    if (j >= lo && j <= hi) continue;  // midpoint already charged the node

    const bool is_left = j < ci;
    SideStats& side = is_left ? left : right;
    side.add(family, j);
    lo = std::min(lo, j);
    hi = std::max(hi, j);

    const double g = scattered ? std::max(left.gap(), right.gap())
                               : left.gap_with(right);
    if (g >= eps) {
      // Find the partner that realizes the failure against node j.
      std::size_t partner = j;
      double worst = -1.0;
      for (std::size_t k = lo; k <= hi; ++k) {
        if (k == j) continue;
        if (scattered && ((k < ci) != is_left)) continue;
        const double d = family_gap(family, j, k);
        if (d > worst) {
          worst = d;
          partner = k;
        }
      }
      return {dist, std::min(j, partner), std::max(j, partner), true};
    }
  }
}

// Smallest scale point at or after x, if any.
std::optional<double> point_at_or_after(const TimeScale& s, double x) {
  for (const Segment& seg : s.segments()) {
    if (x <= seg.lo) return seg.lo;
    if (x <= seg.hi) return x;
  }
  return std::nullopt;
}

void validate_family(std::span<const GridFunction> family, double eps) {
  if (family.empty()) throw std::invalid_argument("family must be non-empty");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  for (const GridFunction& u : family)
    if (!same_grid(u, family.front()))
      throw std::invalid_argument("family members must share one grid");
}

double global_family_gap(std::span<const GridFunction> family) {
  double g = 0.0;
  for (const GridFunction& u : family)
    g = std::max(
        g, (u.values.colwise().maxCoeff() - u.values.colwise().minCoeff())
               .maxCoeff());
  return g;
}

}  // namespace

RdCheckResult certify_rd_continuity(std::span<const GridFunction> family,
                                    double eps) {
  validate_family(family, eps);
  const Grid& grid = *family.front().grid;
  const auto& t = grid.nodes();
  const std::size_t n = grid.size();
  const double a = t.front(), b = t.back();

  if (n == 1) return RdPartition{{a}, {1.0}, eps};

  // Uniformly small variation: two balls spanning everything suffice.
  if (global_family_gap(family) < eps) {
    const double r = (b - a) + 1.0;
    return RdPartition{{a, b}, {r, r}, eps};
  }

  std::vector<BallLimit> limits(n);
  for (std::size_t i = 0; i < n; ++i)
    limits[i] = max_radius(family, grid, i, eps);

  std::vector<std::size_t> centers{0};
  double frontier = a + limits[0].radius;

  while (true) {
    const auto fe = point_at_or_after(grid.interval().scale(), frontier);
    if (!fe || *fe > b) break;
    const double x = *fe;
    double best_reach = -std::numeric_limits<double>::infinity();
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j] - limits[j].radius < x && t[j] + limits[j].radius > x) {
        const double reach = t[j] + limits[j].radius;
        if (reach > best_reach) {
          best_reach = reach;
          best = j;
        }
      }
    }
    if (best == n) {
      // No admissible ball covers x: rd-continuity fails here.  x lies
      // strictly between two in-segment nodes.
      auto it = std::upper_bound(t.begin(), t.end(), x);
      const std::size_t hi_idx = static_cast<std::size_t>(it - t.begin());
      const std::size_t lo_idx = hi_idx - 1;
      return RdViolation{x, t[lo_idx], t[hi_idx],
                         family_gap(family, lo_idx, hi_idx)};
    }
    centers.push_back(best);
    frontier = best_reach;
  }

  if (centers.back() != n - 1) centers.push_back(n - 1);

  RdPartition part;
  part.epsilon = eps;
  for (const std::size_t c : centers) {
    part.centers.push_back(t[c]);
    part.radii.push_back(limits[c].radius);
  }
  return part;
}

RdCheckResult check_rd_continuity(const GridFunction& u, double eps) {
  return certify_rd_continuity(std::span<const GridFunction>(&u, 1), eps);
}

std::variant<std::vector<double>, RdViolation> equicontinuity_partition(
    std::span<const GridFunction> family, double eps) {
  RdCheckResult res = certify_rd_continuity(family, eps);
  if (std::holds_alternative<RdViolation>(res))
    return std::get<RdViolation>(res);
  const RdPartition& part = std::get<RdPartition>(res);
  const Grid& grid = *family.front().grid;
  const auto& t = grid.nodes();

  std::vector<double> knots{part.centers.front()};
  auto push = [&knots](double x) {
    if (knots.back() < x) knots.push_back(x);
  };

  for (std::size_t k = 0; k + 1 < part.centers.size(); ++k) {
    const double ta = part.centers[k], tb = part.centers[k + 1];
    const double da = part.radii[k], db = part.radii[k + 1];
    const std::size_t ia = grid.index_of(ta), ib = grid.index_of(tb);
    // L: nodes of [ta, tb] within [ta, ta + da).
    std::size_t lmax = ia;
    while (lmax + 1 <= ib && t[lmax + 1] < ta + da) ++lmax;
    // R: nodes of [ta, tb] within (tb - db, tb].
    std::size_t rmin = ib;
    while (rmin > ia && t[rmin - 1] > tb - db) --rmin;
    if (rmin <= lmax) {
      push(t[rmin]);  // smallest node of the overlap
    } else {
      push(t[lmax]);
      push(t[rmin]);
    }
    push(tb);
  }
  return knots;
}

}  // namespace tscal
