#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tscal/grid.hpp"
#include "tscal/time_scale.hpp"

namespace tscal {

// Initial value problem u^Delta = f(t, u), u(a) = u0 on the window
// [a, b] of a time scale.  beta and M describe the a priori box: |f| is
// assumed bounded by M (sup norm) while u stays within beta of u0.
struct IvpSpec {
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> rhs;
  Eigen::VectorXd u0;
  TsInterval window;
  double beta;
  double M;
};

// Existence horizon determined by the slope budget.  With
// c = min(b, a + beta / M), b_star is the literal supremum of
// {s in [a, b]_T : sigma(s) <= c}.  The guard asks whether the final
// jump out of b_star still fits the budget; when it does the solve may
// run through sigma(b_star), otherwise it stops at the last scale point
// not beyond c.
struct LocalWindow {
  double c;
  double b_star;
  double sigma_b_star;
  bool guard_ok;  // M * (sigma_b_star - a) <= beta
  double end;     // guard_ok ? sigma_b_star : floor(c)
};

// Throws std::invalid_argument when no point satisfies sigma(s) <= c,
// i.e. the first jump already overshoots the budget.
LocalWindow local_window(const TimeScale& T, double a, double b, double beta,
                         double M);

struct SolutionTrace {
  GridFunction u;
  std::vector<double> residual;  // per node: |u - u0 - integral of f|
  double residual_max = 0;
  std::optional<std::size_t> first_ball_exit;  // node leaving the beta ball
  bool slope_bound_ok = true;  // |f| <= M held at every evaluated node
  LocalWindow window{};
};

// Marches the grid: exact jump step across gaps, classical fourth-order
// Runge-Kutta inside dense cells.  Throws NumericalError on non-finite
// state.  Leaving the beta ball or exceeding M is recorded, not fatal.
SolutionTrace step_solve(const IvpSpec& spec, double h);

// Residual of the integral form u(t) = u0 + integral of f(s, u(s)),
// with the integrand sampled at the trace nodes.
std::vector<double> volterra_residual(const GridFunction& u,
                                      const IvpSpec& spec);

enum class PicardStatus { converged, max_iterations, diverged };

struct PicardDiagnostics {
  std::vector<double> iterate_gaps;  // sup distance between iterates
  // vk[k]: largest per-node diameter of the iterates still in play at
  // stage k (all u_j with j >= k).
  std::vector<double> vk;
  PicardStatus status = PicardStatus::max_iterations;
};

struct PicardResult {
  SolutionTrace trace;
  PicardDiagnostics diagnostics;
};

// Successive approximations u_{k+1} = u0 + integral of f(., u_k),
// starting from the constant u0.  Divergence is declared after three
// consecutive gap increases once past the fifth iterate.
PicardResult picard_iterate(const IvpSpec& spec, double h, int k_max,
                            double tol);

// Contraction diagnostics on sampled path families.  X0 holds slope
// bounded random paths through u0 clipped to the beta box; each stage
// maps members through the integral operator and replaces the family
// with random convex combinations of the images.  vk[k][i] is the
// family diameter at node i.
struct XkReport {
  std::vector<std::vector<double>> vk;
  double max_increase = 0;  // worst v_{k+1} - v_k over nodes
  bool nonincreasing = false;
};

XkReport xk_diagnostics(const IvpSpec& spec, int n_samples, int k_max,
                        std::uint64_t seed, double h);

}  // namespace tscal
