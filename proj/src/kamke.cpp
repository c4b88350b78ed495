#include "tscal/kamke.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tscal/common.hpp"

namespace tscal {

KamkeSpec linear_kamke(GridFunction q) {
  if (q.dim() != 1)
    throw std::invalid_argument("comparison coefficient must be scalar");
  KamkeSpec spec;
  spec.grid = q.grid;
  spec.q = std::move(q);
  return spec;
}

KamkeSpec custom_kamke(GridPtr grid, std::function<double(double, double)> w) {
  if (!grid) throw std::invalid_argument("grid required");
  if (!w) throw std::invalid_argument("comparison function required");
  KamkeSpec spec;
  spec.grid = std::move(grid);
  spec.w = std::move(w);
  return spec;
}

double kamke_eval(const KamkeSpec& spec, double t, double x) {
  if (spec.q) return spec.q->values(spec.q->grid->index_of(t), 0) * x;
  return spec.w(t, x);
}

KamkeReport axiom_check(const KamkeSpec& spec, double x_max, double eps) {
  if (!spec.grid) throw std::invalid_argument("grid required");
  if (!(x_max > 0)) throw std::invalid_argument("x_max must be positive");
  const Grid& g = *spec.grid;
  const std::size_t n = g.size();

  KamkeReport rep;

  // Dense sampling in x for the modulus, coarse levels for the
  // rd-continuity family.
  constexpr int kFine = 32;
  Eigen::MatrixXd w_fine(static_cast<Eigen::Index>(n), kFine + 1);
  double w_scale = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (int j = 0; j <= kFine; ++j) {
      const double x = x_max * j / kFine;
      const double w = kamke_eval(spec, g.node(i), x);
      if (!std::isfinite(w))
        throw NumericalError("comparison function is non-finite");
      w_fine(static_cast<Eigen::Index>(i), j) = w;
      w_scale = std::max(w_scale, std::abs(w));
    }

  const double tol0 = 1e-14 * (1.0 + w_scale);
  rep.worst_at_origin = w_fine.col(0).cwiseAbs().maxCoeff();
  rep.zero_at_origin = rep.worst_at_origin <= tol0;
  rep.nonnegative = w_fine.minCoeff() >= -tol0;

  {  // one family holding every fourth sampled level
    std::vector<GridFunction> levels;
    for (int j = 0; j <= kFine; j += 4)
      levels.push_back({spec.grid, w_fine.col(j)});
    auto res = certify_rd_continuity(
        std::span<const GridFunction>(levels.data(), levels.size()), eps);
    if (std::holds_alternative<RdPartition>(res)) {
      rep.rd_in_t = true;
    } else {
      rep.rd_in_t = false;
      rep.rd_failure = std::get<RdViolation>(res);
    }
  }

  for (int j = 0; j < 8; ++j) {
    const double delta = x_max * std::pow(0.5, j);
    double om = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (int p = 0; p <= kFine; ++p)
        for (int r = p + 1;
             r <= kFine && (r - p) * x_max / kFine <= delta; ++r)
          om = std::max(om, std::abs(w_fine(static_cast<Eigen::Index>(i), p) -
                                     w_fine(static_cast<Eigen::Index>(i), r)));
    rep.x_modulus.emplace_back(delta, om);
  }

  const bool q_ok = spec.q.has_value() && rep.nonnegative && rep.rd_in_t &&
                    rep.zero_at_origin;
  rep.uniqueness = q_ok ? KamkeReport::Uniqueness::verified_linear
                        : KamkeReport::Uniqueness::not_verified;
  return rep;
}

GronwallProbe gronwall_uniqueness_probe(const KamkeSpec& spec, double eps0) {
  if (!spec.q)
    throw std::invalid_argument("uniqueness probe needs the linear form");
  if (!(eps0 > 0)) throw std::invalid_argument("eps0 must be positive");
  const Grid& g = *spec.grid;
  const auto& t = g.nodes();
  const Eigen::MatrixXd& q = spec.q->values;

  GronwallProbe probe;
  probe.from_zero.assign(g.size(), 0.0);
  probe.envelope.assign(g.size(), 0.0);
  probe.envelope[0] = eps0;

  double v = 0.0, u = eps0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double dt = t[i + 1] - t[i];
    const auto ii = static_cast<Eigen::Index>(i);
    if (g.gap_after(i)) {
      v = v + dt * q(ii, 0) * v;
      u = u * (1.0 + dt * q(ii, 0));
    } else {
      v = v + dt * q(ii, 0) * v;
      u = u * std::exp(0.5 * dt * (q(ii, 0) + q(ii + 1, 0)));
    }
    probe.from_zero[i + 1] = v;
    probe.envelope[i + 1] = u;
    probe.from_zero_max = std::max(probe.from_zero_max, std::abs(v));
  }
  probe.zero_stays_zero = probe.from_zero_max == 0.0;
  return probe;
}

bool delta_diff_at_a_check(const GridFunction& u, double tol) {
  if (u.dim() != 1) throw std::invalid_argument("scalar function required");
  const Grid& g = *u.grid;
  if (g.size() < 2)
    throw std::invalid_argument("need at least two nodes after a");
  const double a = g.node(0);
  if (g.gap_after(0)) return std::abs(u.values(1, 0)) <= tol;
  for (std::size_t i = 1; i <= 3 && i < g.size() && !g.gap_after(i - 1);
       ++i) {
    if (std::abs(u.values(static_cast<Eigen::Index>(i), 0)) /
            (g.node(i) - a) >
        tol)
      return false;
  }
  return true;
}

}  // namespace tscal
