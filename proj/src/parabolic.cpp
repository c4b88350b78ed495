#include "tscal/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tscal/common.hpp"

namespace tscal {

double initial_sup(const std::function<double(int)>& phi, int N) {
  double s = 0;
  for (int n = 1; n <= std::max(N, 64); ++n) s = std::max(s, std::abs(phi(n)));
  return s;
}

double parabolic_slope_bound(double P, double phi_norm, double beta) {
  return P + kSecondDifferenceLipschitz * (phi_norm + beta);
}

namespace {

void validate(const ParabolicSpec& spec) {
  if (!spec.forcing || !spec.phi || !spec.psi)
    throw std::invalid_argument("forcing, phi and psi are all required");
  if (spec.N < 1) throw std::invalid_argument("truncation order must be >= 1");
  if (!(spec.beta > 0)) throw std::invalid_argument("beta must be positive");
  if (!(spec.P >= 0)) throw std::invalid_argument("P must be >= 0");
}

Eigen::VectorXd discrete_rhs(const ParabolicSpec& spec, double t,
                             const Eigen::VectorXd& x) {
  const int N = spec.N;
  Eigen::VectorXd r = -2.0 * x;
  if (N > 1) {
    r.head(N - 1) += x.tail(N - 1);
    r.tail(N - 1) += x.head(N - 1);
  }
  r(0) += spec.psi(t);
  for (int j = 0; j < N; ++j) r(j) += spec.forcing(t, j + 1);
  return r;
}

}  // namespace

IvpSpec semi_discretize(const ParabolicSpec& spec) {
  validate(spec);
  ParabolicSpec copy = spec;
  IvpSpec ivp{[copy](double t, const Eigen::VectorXd& x) {
                return discrete_rhs(copy, t, x);
              },
              Eigen::VectorXd(spec.N), spec.window, spec.beta,
              parabolic_slope_bound(spec.P, initial_sup(spec.phi, spec.N),
                                    spec.beta)};
  for (int j = 0; j < spec.N; ++j) ivp.u0(j) = spec.phi(j + 1);
  return ivp;
}

HypothesisReport verify_hypotheses(const ParabolicSpec& spec, double h,
                                   double eps, int trials,
                                   std::uint64_t seed) {
  validate(spec);
  const int N = spec.N;
  GridPtr grid = make_grid(spec.window, h);
  const std::size_t n = grid->size();
  std::mt19937_64 rng(seed);

  HypothesisReport rep;
  const double phi_norm = initial_sup(spec.phi, N);
  const double box = phi_norm + spec.beta;
  std::uniform_real_distribution<double> in_box(-box, box);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);

  for (int trial = 0; trial < trials; ++trial) {
    const double t = grid->node(node(rng));
    Eigen::VectorXd x(N), y(N);
    for (int j = 0; j < N; ++j) {
      x(j) = in_box(rng);
      y(j) = in_box(rng);
    }
    const double dx = sup_norm(Eigen::VectorXd(x - y));
    if (dx == 0) continue;
    const double df = sup_norm(Eigen::VectorXd(
        discrete_rhs(spec, t, x) - discrete_rhs(spec, t, y)));
    rep.lipschitz_random = std::max(rep.lipschitz_random, df / dx);
  }

  {  // alternating signs push every interior second difference to 4
    Eigen::VectorXd x(N);
    for (int j = 0; j < N; ++j) x(j) = (j % 2 == 0) ? 1.0 : -1.0;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(N);
    const double t = grid->node(0);
    rep.lipschitz_adversarial = sup_norm(Eigen::VectorXd(
        discrete_rhs(spec, t, x) - discrete_rhs(spec, t, zero)));
  }
  rep.lipschitz_ok =
      rep.lipschitz_random <= kSecondDifferenceLipschitz + 1e-9 &&
      rep.lipschitz_adversarial <= kSecondDifferenceLipschitz + 1e-9;

  Eigen::VectorXd forcing_sup(static_cast<Eigen::Index>(n));
  double head = 0, tail = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid->node(i);
    double s = std::abs(spec.forcing(t, 1) + spec.psi(t));
    for (int j = 1; j <= N; ++j) {
      const double a = std::abs(spec.forcing(t, j));
      s = std::max(s, a);
      if (j <= N / 2 || N < 2)
        head = std::max(head, a);
      else
        tail = std::max(tail, a);
    }
    forcing_sup(static_cast<Eigen::Index>(i)) = s;
    rep.forcing_worst = std::max(rep.forcing_worst, s);
  }
  rep.forcing_bound_ok = rep.forcing_worst <= spec.P + 1e-12;
  rep.decay_consistent = tail <= head + 1e-12;

  for (int trial = 0; trial < trials; ++trial) {
    const double t = grid->node(node(rng));
    Eigen::VectorXd x(N);
    for (int j = 0; j < N; ++j) x(j) = in_box(rng);
    const Eigen::VectorXd f = discrete_rhs(spec, t, x);
    for (int j = 0; j < N; ++j) {
      double p = std::abs(spec.forcing(t, j + 1));
      if (j == 0) p += std::abs(spec.psi(t));
      // Neighborhood sup from one site below j on.
      double nb = 0;
      for (int i = std::max(0, j - 1); i < N; ++i)
        nb = std::max(nb, std::abs(x(i)));
      rep.growth_excess = std::max(
          rep.growth_excess,
          std::abs(f(j)) - (p + kSecondDifferenceLipschitz * nb));
    }
  }
  rep.growth_ok = rep.growth_excess <= 1e-12;

  {
    GridFunction fs{grid, forcing_sup};
    auto res = check_rd_continuity(fs, eps);
    if (std::holds_alternative<RdPartition>(res)) {
      rep.rd_ok = true;
    } else {
      rep.rd_ok = false;
      rep.rd_failure = std::get<RdViolation>(res);
    }
  }
  return rep;
}

ParabolicSolution solve_parabolic(const ParabolicSpec& spec, double h) {
  ParabolicSolution sol;
  IvpSpec ivp = semi_discretize(spec);
  sol.phi_norm = initial_sup(spec.phi, spec.N);
  sol.M = ivp.M;
  sol.trace = step_solve(ivp, h);

  const Grid& g = *sol.trace.u.grid;
  double widest = 0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    widest = std::max(widest, g.node(i + 1) - g.node(i));
  // Convexity of the explicit jump step needs 2 * mu <= 1; wider steps
  // lose the discrete sup-norm max principle.
  sol.stability_warning = kSecondDifferenceLipschitz * widest > 2.0;

  for (int div : {4, 8}) {
    if (spec.N < div) continue;
    const int from = spec.N - spec.N / div + 1;
    TailBand band{from, 0};
    for (int j = from; j <= spec.N; ++j)
      band.sup = std::max(band.sup,
                          sol.trace.u.values.col(j - 1).cwiseAbs().maxCoeff());
    sol.tails.push_back(band);
  }
  return sol;
}

std::vector<ConvergenceRow> convergence_study(const ParabolicSpec& spec,
                                              const std::vector<int>& orders,
                                              double h) {
  validate(spec);
  if (orders.empty()) return {};
  std::vector<int> ns = orders;
  std::sort(ns.begin(), ns.end());
  std::vector<Eigen::MatrixXd> sols;
  for (int N : ns) {
    ParabolicSpec s = spec;
    s.N = N;
    sols.push_back(solve_parabolic(s, h).trace.u.values);
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    const int shared = std::min(ns[k], ns[k + 1]);
    const double d = (sols[k].leftCols(shared) - sols[k + 1].leftCols(shared))
                         .cwiseAbs()
                         .maxCoeff();
    rows.push_back({ns[k], ns[k + 1], d});
  }
  return rows;
}

}  // namespace tscal
