#pragma once

#include <Eigen/Dense>

#include "tscal/grid.hpp"

namespace tscal {

// Delta derivative estimate at node i.
//
// Right-scattered nodes use the exact jump quotient
//     (u(sigma(t)) - u(t)) / (sigma(t) - t),
// which the grid realizes exactly because consecutive nodes across a gap
// are (t, sigma(t)).  Right-dense nodes use a central difference when both
// neighbours live in the same dense segment, otherwise the one-sided
// difference into the segment.  The right endpoint of the window is
// right-dense by convention and gets the backward difference; a
// left-scattered maximum is outside the differentiable core and is an
// error.  No difference ever reaches across a gap.
Eigen::VectorXd delta_derivative(const GridFunction& u, std::size_t i);

// Cauchy integral over grid nodes [from, to]: composite trapezoid on each
// dense stretch plus the exact term (sigma(tau) - tau) * u(tau) for each
// right-scattered node in [from, to).  Terms accumulate left to right.
// from > to flips the sign; from == to gives zero.
Eigen::VectorXd delta_integral(const GridFunction& u, std::size_t from,
                               std::size_t to);

// Running integral from node `from`; row i holds the integral up to node
// i (zero row at `from` itself and below).  Same term order as
// delta_integral.
Eigen::MatrixXd cumulative_delta_integral(const GridFunction& u,
                                          std::size_t from = 0);

// Checks ||integral of u|| <= integral of v over [s, t] given the
// pointwise domination ||u(tau)|| <= v(tau) at nodes (validated; throws
// std::invalid_argument when it fails).  The comparison carries a small
// quadrature tolerance.
bool norm_bound_check(const GridFunction& u, const GridFunction& v,
                      std::size_t s, std::size_t t, double rtol = 1e-9);

// Mean value containment: the window average of u over [a, t0] must lie
// in the convex hull of the node values, within tol (Euclidean hull
// distance; d = 1 and d = 2 are exact geometry, higher dimensions use a
// nonnegative least-squares projection).
bool mvt_hull_check(const GridFunction& u, std::size_t a, std::size_t t0,
                    double tol);

// Euclidean distance from p to the convex hull of the rows of P.
double hull_distance(const Eigen::MatrixXd& P, const Eigen::VectorXd& p);

}  // namespace tscal
