#include "tscal/delta_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tscal/common.hpp"

namespace tscal {

Eigen::VectorXd delta_derivative(const GridFunction& u, std::size_t i) {
  const Grid& g = *u.grid;
  const std::size_t n = g.size();
  if (i >= n) throw std::invalid_argument("node index out of range");
  const auto& t = g.nodes();

  if (i == n - 1) {
    if (n == 1)
      throw std::invalid_argument("cannot differentiate on a single node");
    if (g.gap_after(n - 2))
      throw std::invalid_argument(
          "left-scattered maximum is outside the differentiable core");
    // Right endpoint, right-dense by convention: backward difference.
    return (u.values.row(n - 1) - u.values.row(n - 2)).transpose() /
           (t[n - 1] - t[n - 2]);
  }
  if (g.gap_after(i)) {
    // Exact jump quotient; t[i+1] == sigma(t[i]).
    return (u.values.row(i + 1) - u.values.row(i)).transpose() /
           (t[i + 1] - t[i]);
  }
  const bool left_in_segment = i > 0 && !g.gap_after(i - 1);
  if (left_in_segment)
    return (u.values.row(i + 1) - u.values.row(i - 1)).transpose() /
           (t[i + 1] - t[i - 1]);
  return (u.values.row(i + 1) - u.values.row(i)).transpose() /
         (t[i + 1] - t[i]);
}

namespace {

// One quadrature term for the cell [node i, node i+1]: exact scattered
// jump or trapezoid, depending on where the cell lives.
Eigen::RowVectorXd cell_term(const GridFunction& u, std::size_t i) {
  const auto& t = u.grid->nodes();
  const double dt = t[i + 1] - t[i];
  if (u.grid->gap_after(i)) return dt * u.values.row(i);
  return 0.5 * dt * (u.values.row(i) + u.values.row(i + 1));
}

}  // namespace

Eigen::VectorXd delta_integral(const GridFunction& u, std::size_t from,
                               std::size_t to) {
  const std::size_t n = u.grid->size();
  if (from >= n || to >= n) throw std::invalid_argument("node index out of range");
  if (from > to) return -delta_integral(u, to, from);
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(u.dim());
  for (std::size_t i = from; i < to; ++i) acc += cell_term(u, i);
  return acc.transpose();
}

Eigen::MatrixXd cumulative_delta_integral(const GridFunction& u,
                                          std::size_t from) {
  const std::size_t n = u.grid->size();
  if (from >= n) throw std::invalid_argument("node index out of range");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, u.dim());
  for (std::size_t i = from; i + 1 < n; ++i)
    out.row(i + 1) = out.row(i) + cell_term(u, i);
  return out;
}

bool norm_bound_check(const GridFunction& u, const GridFunction& v,
                      std::size_t s, std::size_t t, double rtol) {
  if (!same_grid(u, v))
    throw std::invalid_argument("norm bound needs functions on one grid");
  if (v.dim() != 1) throw std::invalid_argument("bound must be scalar");
  const std::size_t lo = std::min(s, t), hi = std::max(s, t);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (sup_norm(u.values.row(i)) > v.values(i, 0) + rtol)
      throw std::invalid_argument("pointwise domination ||u|| <= v fails");
  }
  const double lhs = sup_norm(delta_integral(u, lo, hi));
  const double rhs = delta_integral(v, lo, hi)(0);
  return lhs <= rhs + rtol * (1.0 + std::abs(rhs));
}

namespace {

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

// Exact planar hull distance: monotone-chain hull, then inside test /
// minimum edge distance.
double hull_distance_2d(const Eigen::MatrixXd& P, const Eigen::Vector2d& p) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(P.rows());
  for (Eigen::Index i = 0; i < P.rows(); ++i) pts.emplace_back(P(i, 0), P(i, 1));
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());
  const auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  if (pts.size() < 3) {
    if (pts.size() == 1) return (p - pts[0]).norm();
    return point_segment_distance(p, pts[0], pts[1]);
  }
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& q : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= 0) --k;
    hull[k++] = q;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    double best = (p - hull[0]).norm();
    for (std::size_t i = 1; i < hull.size(); ++i)
      best = std::min(best, point_segment_distance(p, hull[i - 1], hull[i]));
    return best;
  }
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) inside = false;
    best = std::min(best, point_segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

// Lawson-Hanson nonnegative least squares for min ||A w - b||, w >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  Eigen::VectorXd resid = b;
  for (int outer = 0; outer < 4 * static_cast<int>(n) + 16; ++outer) {
    const Eigen::VectorXd grad = A.transpose() * resid;
    Eigen::Index best = -1;
    double best_g = 1e-12 * (1.0 + b.norm());
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[j] && grad(j) > best_g) { best_g = grad(j); best = j; }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 4 * static_cast<int>(n) + 16; ++inner) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index j = 0; j < n; ++j) if (passive[j]) idx.push_back(j);
      Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t c = 0; c < idx.size(); ++c) Ap.col(c) = A.col(idx[c]);
      const Eigen::VectorXd z =
          Ap.colPivHouseholderQr().solve(b);
      bool feasible = true;
      for (Eigen::Index c = 0; c < z.size(); ++c)
        if (z(c) <= 0) { feasible = false; break; }
      if (feasible) {
        w.setZero();
        for (std::size_t c = 0; c < idx.size(); ++c) w(idx[c]) = z(c);
        break;
      }
      // Step back to the feasibility boundary and drop hit variables.
      double alpha = 1.0;
      for (std::size_t c = 0; c < idx.size(); ++c) {
        if (z(static_cast<Eigen::Index>(c)) <= 0) {
          const double wj = w(idx[c]);
          const double denom = wj - z(static_cast<Eigen::Index>(c));
          if (denom > 0) alpha = std::min(alpha, wj / denom);
        }
      }
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const double nw = w(idx[c]) + alpha * (z(static_cast<Eigen::Index>(c)) - w(idx[c]));
        w(idx[c]) = nw;
        if (nw <= 1e-14) { w(idx[c]) = 0.0; passive[idx[c]] = false; }
      }
    }
    resid = b - A * w;
  }
  return w;
}

}  // namespace

double hull_distance(const Eigen::MatrixXd& P, const Eigen::VectorXd& p) {
  if (P.rows() == 0) throw std::invalid_argument("hull of an empty set");
  const Eigen::Index d = P.cols();
  if (d != p.size()) throw std::invalid_argument("dimension mismatch");
  if (d == 1) {
    const double lo = P.col(0).minCoeff(), hi = P.col(0).maxCoeff();
    return std::max({lo - p(0), p(0) - hi, 0.0});
  }
  if (d == 2) return hull_distance_2d(P, Eigen::Vector2d(p(0), p(1)));
  // Least-squares projection onto the hull: min ||P^T w - p|| subject to
  // w >= 0, sum w = 1; the affine constraint enters as a heavy penalty row.
  // tau^2 must stay well below 1/eps or the passive-set solves lose the
  // gradient signal of vertices that are orthogonal to the residual.
  const double scale = std::max(1.0, std::max(P.cwiseAbs().maxCoeff(),
                                              p.cwiseAbs().maxCoeff()));
  const double tau = 1e4 * scale;
  Eigen::MatrixXd A(d + 1, P.rows());
  A.topRows(d) = P.transpose();
  A.row(d).setConstant(tau);
  Eigen::VectorXd b(d + 1);
  b.head(d) = p;
  b(d) = tau;
  Eigen::VectorXd w = nnls(A, b);
  const double total = w.sum();
  if (total > 0) w /= total;
  return (P.transpose() * w - p).norm();
}

bool mvt_hull_check(const GridFunction& u, std::size_t a, std::size_t t0,
                    double tol) {
  if (t0 < a) throw std::invalid_argument("window needs a <= t0");
  if (t0 == a) return true;
  const double measure = u.grid->node(t0) - u.grid->node(a);
  const Eigen::VectorXd mean = delta_integral(u, a, t0) / measure;
  const Eigen::MatrixXd P =
      u.values.middleRows(static_cast<Eigen::Index>(a),
                          static_cast<Eigen::Index>(t0 - a + 1));
  return hull_distance(P, mean) <= tol;
}

}  // namespace tscal
