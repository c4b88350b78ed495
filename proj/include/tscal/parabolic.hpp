#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tscal/rd_continuity.hpp"
#include "tscal/solver.hpp"

namespace tscal {

// Heat-type dynamic equation on the unit-spaced lattice j = 1, 2, ...,
// truncated to the first N sites.  Component j evolves by the second
// difference of its neighbors plus forcing; site 0 carries the boundary
// value psi(t) and site N+1 is pinned to zero by the truncation.
struct ParabolicSpec {
  std::function<double(double, int)> forcing;  // F(t, j), j >= 1
  std::function<double(int)> phi;              // initial values, j >= 1
  std::function<double(double)> psi;           // boundary value at site 0
  TsInterval window;
  int N;
  double beta;  // solution box radius around phi
  double P;     // bound on |forcing| and |forcing + boundary|
};

// Sup-norm Lipschitz constant of the second-difference map.
inline constexpr double kSecondDifferenceLipschitz = 4.0;

// Largest |phi(n)| over n = 1..max(N, 64).
double initial_sup(const std::function<double(int)>& phi, int N);

// Slope bound |f| <= P + 4 * (|phi| + beta) while the state stays in
// the beta box.
double parabolic_slope_bound(double P, double phi_norm, double beta);

// The truncated system as a first-order initial value problem.
IvpSpec semi_discretize(const ParabolicSpec& spec);

struct HypothesisReport {
  double lipschitz_random = 0;       // worst sampled ratio
  double lipschitz_adversarial = 0;  // alternating-sign probe ratio
  bool lipschitz_ok = false;         // both within the constant 4
  double forcing_worst = 0;
  bool forcing_bound_ok = false;  // <= P
  double growth_excess = 0;  // worst |f_j| minus its componentwise budget
  bool growth_ok = false;
  bool decay_consistent = false;  // forcing tail no larger than its head
  bool rd_ok = false;  // t -> sup_j |F(t,j)| and boundary certify
  std::optional<RdViolation> rd_failure;
};

// Samples the discretized right-hand side over the grid and random
// states in the beta box.
HypothesisReport verify_hypotheses(const ParabolicSpec& spec, double h,
                                   double eps, int trials,
                                   std::uint64_t seed);

struct TailBand {
  int from;    // first lattice site of the band (1-indexed)
  double sup;  // largest |x_j(t)| over the band and all nodes
};

struct ParabolicSolution {
  SolutionTrace trace;
  double phi_norm = 0;
  double M = 0;
  bool stability_warning = false;  // a step is too wide for the
                                   // sup-norm max principle
  std::vector<TailBand> tails;     // last quarter and eighth of the sites
};

ParabolicSolution solve_parabolic(const ParabolicSpec& spec, double h);

struct ConvergenceRow {
  int n_lo, n_hi;
  double max_diff;  // over shared components and all nodes
};

// Re-solves with each truncation order and diffs consecutive solutions.
std::vector<ConvergenceRow> convergence_study(const ParabolicSpec& spec,
                                              const std::vector<int>& orders,
                                              double h);

}  // namespace tscal
