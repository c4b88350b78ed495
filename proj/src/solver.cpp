#include "tscal/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "tscal/common.hpp"
#include "tscal/delta_calculus.hpp"
#include "tscal/mnc.hpp"

namespace tscal {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// Largest scale point <= x; x must not precede the scale.
double floor_point(const TimeScale& T, double x) {
  double best = T.min();
  if (x < best) throw std::invalid_argument("point precedes the scale");
  for (const Segment& seg : T.segments()) {
    if (x < seg.lo) break;
    best = std::min(x, seg.hi);
  }
  return best;
}

void validate_spec(const IvpSpec& spec) {
  if (!spec.rhs) throw std::invalid_argument("right-hand side required");
  if (!(spec.beta > 0)) throw std::invalid_argument("beta must be positive");
  if (!(spec.M > 0)) throw std::invalid_argument("M must be positive");
}

GridPtr solve_grid(const IvpSpec& spec, double h, LocalWindow& lw) {
  lw = local_window(spec.window.scale(), spec.window.a(), spec.window.b(),
                    spec.beta, spec.M);
  TsInterval iv(spec.window.scale(), spec.window.a(), lw.end);
  return make_grid(iv, h);
}

Eigen::VectorXd eval_rhs(const IvpSpec& spec, double t,
                         const Eigen::VectorXd& u) {
  Eigen::VectorXd f = spec.rhs(t, u);
  if (!f.allFinite())
    throw NumericalError("right-hand side non-finite at t=" + fmt(t));
  return f;
}

void finish_trace(SolutionTrace& tr, const IvpSpec& spec) {
  tr.residual = volterra_residual(tr.u, spec);
  tr.residual_max = 0;
  for (double r : tr.residual) tr.residual_max = std::max(tr.residual_max, r);
}

// One pass of the integral operator: u0 + cumulative integral of
// f(., w(.)).
Eigen::MatrixXd picard_map(const IvpSpec& spec, const GridPtr& grid,
                           const Eigen::MatrixXd& w) {
  const std::size_t n = grid->size();
  Eigen::MatrixXd F(w.rows(), w.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    F.row(ii) =
        eval_rhs(spec, grid->node(i), w.row(ii).transpose()).transpose();
  }
  GridFunction Ff{grid, F};
  Eigen::MatrixXd out = cumulative_delta_integral(Ff);
  out.rowwise() += spec.u0.transpose();
  return out;
}

}  // namespace

LocalWindow local_window(const TimeScale& T, double a, double b, double beta,
                         double M) {
  if (!(beta > 0) || !(M > 0))
    throw std::invalid_argument("beta and M must be positive");
  const TimeScale S = T.restricted(T.snap(a), T.snap(b));
  const double aa = S.min(), bb = S.max();

  LocalWindow lw{};
  lw.c = std::min(bb, aa + beta / M);

  bool found = false;
  double best = aa;
  for (const Segment& seg : S.segments()) {
    if (lw.c < seg.lo) break;
    if (seg.lo == seg.hi) {
      // Isolated point: in the set only when its jump fits.
      if (S.sigma(seg.hi) <= lw.c) {
        best = seg.hi;
        found = true;
      }
      continue;
    }
    if (lw.c >= seg.hi) {
      // Everything up to hi satisfies sigma(s) = s <= c, so the
      // supremum of this stretch is hi whether or not its own jump
      // fits.
      best = seg.hi;
      found = true;
    } else {
      // c lands inside the segment; the supremum is c and attained.
      best = lw.c;
      found = true;
      break;
    }
  }
  if (!found)
    throw std::invalid_argument(
        "no admissible horizon: sigma(a)=" + fmt(S.sigma(aa)) +
        " already exceeds the slope budget c=" + fmt(lw.c));

  lw.b_star = best;
  lw.sigma_b_star = S.sigma(best);
  lw.guard_ok = M * (lw.sigma_b_star - aa) <= beta;
  lw.end = lw.guard_ok ? lw.sigma_b_star : floor_point(S, lw.c);
  return lw;
}

SolutionTrace step_solve(const IvpSpec& spec, double h) {
  validate_spec(spec);
  SolutionTrace tr;
  GridPtr grid = solve_grid(spec, h, tr.window);
  const std::size_t n = grid->size();
  const auto& t = grid->nodes();

  Eigen::MatrixXd U(static_cast<Eigen::Index>(n), spec.u0.size());
  U.row(0) = spec.u0.transpose();
  Eigen::VectorXd u = spec.u0;

  auto track = [&](std::size_t i, const Eigen::VectorXd& f) {
    if (sup_norm(f) > spec.M) tr.slope_bound_ok = false;
    if (!tr.first_ball_exit &&
        sup_norm(Eigen::VectorXd(u - spec.u0)) > spec.beta)
      tr.first_ball_exit = i;
  };
  track(0, eval_rhs(spec, t[0], u));

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dt = t[i + 1] - t[i];
    if (grid->right_scattered(i)) {
      // The jump step is the integral over the scattered cell, exactly.
      u = u + dt * eval_rhs(spec, t[i], u);
    } else {
      const Eigen::VectorXd k1 = eval_rhs(spec, t[i], u);
      const Eigen::VectorXd k2 =
          eval_rhs(spec, t[i] + 0.5 * dt, u + 0.5 * dt * k1);
      const Eigen::VectorXd k3 =
          eval_rhs(spec, t[i] + 0.5 * dt, u + 0.5 * dt * k2);
      const Eigen::VectorXd k4 = eval_rhs(spec, t[i] + dt, u + dt * k3);
      u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!u.allFinite())
      throw NumericalError("state non-finite at t=" + fmt(t[i + 1]));
    U.row(static_cast<Eigen::Index>(i + 1)) = u.transpose();
    track(i + 1, eval_rhs(spec, t[i + 1], u));
  }

  tr.u = GridFunction{grid, std::move(U)};
  finish_trace(tr, spec);
  return tr;
}

std::vector<double> volterra_residual(const GridFunction& u,
                                      const IvpSpec& spec) {
  const Grid& g = *u.grid;
  const std::size_t n = g.size();
  Eigen::MatrixXd F(u.values.rows(), u.values.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    F.row(ii) =
        spec.rhs(g.node(i), u.values.row(ii).transpose()).transpose();
  }
  GridFunction Ff{u.grid, F};
  const Eigen::MatrixXd cum = cumulative_delta_integral(Ff);
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    res[i] = sup_norm(Eigen::VectorXd(u.values.row(ii).transpose() -
                                      spec.u0 - cum.row(ii).transpose()));
  }
  return res;
}

PicardResult picard_iterate(const IvpSpec& spec, double h, int k_max,
                            double tol) {
  validate_spec(spec);
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  PicardResult out;
  GridPtr grid = solve_grid(spec, h, out.trace.window);
  const std::size_t n = grid->size();

  std::vector<Eigen::MatrixXd> iterates;
  iterates.push_back(Eigen::MatrixXd(spec.u0.transpose().replicate(
      static_cast<Eigen::Index>(n), 1)));

  int rising = 0;
  for (int k = 0; k < k_max; ++k) {
    Eigen::MatrixXd next = picard_map(spec, grid, iterates.back());
    const double gap =
        (next - iterates.back()).cwiseAbs().maxCoeff();
    out.diagnostics.iterate_gaps.push_back(gap);
    iterates.push_back(std::move(next));
    if (gap <= tol) {
      out.diagnostics.status = PicardStatus::converged;
      break;
    }
    const auto& gaps = out.diagnostics.iterate_gaps;
    if (k >= 5 && gaps[gaps.size() - 1] > gaps[gaps.size() - 2])
      ++rising;
    else
      rising = 0;
    if (rising >= 3) {
      out.diagnostics.status = PicardStatus::diverged;
      break;
    }
  }

  // Spread of the iterates still in play at each stage, largest over
  // the nodes.
  const std::size_t K = iterates.size();
  for (std::size_t k = 0; k < K; ++k) {
    double v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::MatrixXd pts(static_cast<Eigen::Index>(K - k),
                          spec.u0.size());
      for (std::size_t j = k; j < K; ++j)
        pts.row(static_cast<Eigen::Index>(j - k)) =
            iterates[j].row(static_cast<Eigen::Index>(i));
      v = std::max(v, point_diameter(pts));
    }
    out.diagnostics.vk.push_back(v);
  }

  out.trace.u = GridFunction{grid, iterates.back()};
  finish_trace(out.trace, spec);
  return out;
}

XkReport xk_diagnostics(const IvpSpec& spec, int n_samples, int k_max,
                        std::uint64_t seed, double h) {
  validate_spec(spec);
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

  LocalWindow lw;
  GridPtr grid = solve_grid(spec, h, lw);
  const std::size_t n = grid->size();
  const auto& t = grid->nodes();
  const Eigen::Index d = spec.u0.size();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> slope(-spec.M, spec.M);
  std::exponential_distribution<double> expo(1.0);

  // Slope bounded random paths through u0, clipped to the beta box.
  std::vector<Eigen::MatrixXd> family;
  for (int s = 0; s < n_samples; ++s) {
    Eigen::MatrixXd W(static_cast<Eigen::Index>(n), d);
    W.row(0) = spec.u0.transpose();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double dt = t[i + 1] - t[i];
      for (Eigen::Index c = 0; c < d; ++c) {
        double x = W(static_cast<Eigen::Index>(i), c) + dt * slope(rng);
        x = std::clamp(x, spec.u0(c) - spec.beta, spec.u0(c) + spec.beta);
        W(static_cast<Eigen::Index>(i + 1), c) = x;
      }
    }
    family.push_back(std::move(W));
  }

  auto diameters = [&](const std::vector<Eigen::MatrixXd>& fam) {
    std::vector<double> v(n, 0.0);
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(fam.size()), d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < fam.size(); ++m)
        pts.row(static_cast<Eigen::Index>(m)) =
            fam[m].row(static_cast<Eigen::Index>(i));
      v[i] = point_diameter(pts);
    }
    return v;
  };

  XkReport rep;
  rep.vk.push_back(diameters(family));

  for (int k = 0; k < k_max; ++k) {
    std::vector<Eigen::MatrixXd> images;
    images.reserve(family.size());
    for (const Eigen::MatrixXd& w : family)
      images.push_back(picard_map(spec, grid, w));

    std::vector<Eigen::MatrixXd> next;
    next.reserve(family.size());
    for (int s = 0; s < n_samples; ++s) {
      Eigen::VectorXd lam(static_cast<Eigen::Index>(images.size()));
      for (Eigen::Index m = 0; m < lam.size(); ++m) lam(m) = expo(rng);
      lam /= lam.sum();
      Eigen::MatrixXd mix =
          Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), d);
      for (std::size_t m = 0; m < images.size(); ++m)
        mix += lam(static_cast<Eigen::Index>(m)) * images[m];
      next.push_back(std::move(mix));
    }
    family = std::move(next);
    rep.vk.push_back(diameters(family));
  }

  rep.max_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < rep.vk.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      rep.max_increase =
          std::max(rep.max_increase, rep.vk[k + 1][i] - rep.vk[k][i]);
  rep.nonincreasing = rep.max_increase <= 1e-10;
  return rep;
}

}  // namespace tscal
