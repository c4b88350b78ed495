#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tscal/grid.hpp"
#include "tscal/rd_continuity.hpp"

namespace tscal {

// Scalar comparison function w(t, x) used in uniqueness arguments for
// dynamic equations: w(t, 0) = 0 and the only solution of
// v^Delta = w(t, v), v(a) = 0 should be v = 0.  The linear form
// w(t, x) = q(t) * x with q >= 0 is the verifiable case.
struct KamkeSpec {
  GridPtr grid;
  std::optional<GridFunction> q;  // linear case; overrides w
  std::function<double(double, double)> w;
};

KamkeSpec linear_kamke(GridFunction q);
KamkeSpec custom_kamke(GridPtr grid, std::function<double(double, double)> w);

// Evaluates the comparison function, preferring the linear form.
double kamke_eval(const KamkeSpec& spec, double t, double x);

struct KamkeReport {
  double worst_at_origin = 0;  // max over nodes of |w(t, 0)|
  bool zero_at_origin = false;
  bool rd_in_t = false;  // sampled x levels certify as one family
  std::optional<RdViolation> rd_failure;
  // (delta, sup |w(t,x) - w(t,y)| over |x - y| <= delta), delta shrinking.
  std::vector<std::pair<double, double>> x_modulus;
  bool nonnegative = false;  // w >= 0 on sampled [0, x_max]
  enum class Uniqueness { verified_linear, not_verified };
  Uniqueness uniqueness = Uniqueness::not_verified;
};

// Samples w over node times and x levels in [0, x_max]; eps is the
// rd-continuity certification threshold.
KamkeReport axiom_check(const KamkeSpec& spec, double x_max, double eps);

struct GronwallProbe {
  std::vector<double> from_zero;  // forward iteration started at 0
  double from_zero_max = 0;
  bool zero_stays_zero = false;
  std::vector<double> envelope;  // majorant started at eps0
};

// Linear form only.  from_zero propagates v <- v + mu * q * v across the
// grid and must stay exactly zero.  envelope starts at eps0 and grows by
// the factor (1 + mu q) across a jump and exp(integral of q) across a
// dense cell.
GronwallProbe gronwall_uniqueness_probe(const KamkeSpec& spec,
                                        double eps0 = 1e-8);

// True when a scalar nonnegative u vanishes at the left endpoint to
// first order: u(sigma(a)) <= tol when a is right-scattered, otherwise
// |u(t)| / (t - a) <= tol on the first few nodes after a.
bool delta_diff_at_a_check(const GridFunction& u, double tol);

}  // namespace tscal
