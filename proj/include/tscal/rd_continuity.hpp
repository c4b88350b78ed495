#pragma once

#include <span>
#include <variant>
#include <vector>

#include "tscal/grid.hpp"

namespace tscal {

// Witness that the classic epsilon-partition characterization of
// rd-continuity holds at grid resolution: increasing centers from a to b
// with positive radii whose open balls cover the window, such that inside
// each ball any two nodes on an admissible side differ by less than
// epsilon.  Admissible means: all pairs for a right-dense center, pairs
// lying strictly below or weakly above the center for a right-scattered
// one (a jump at a right-scattered point is allowed).
struct RdPartition {
  std::vector<double> centers;
  std::vector<double> radii;
  double epsilon;
};

// Certification failure: the window point `location` cannot be covered by
// any admissible ball; node_s < location < node_t are its bracketing grid
// nodes and gap is the family value gap across that bracket.
struct RdViolation {
  double location;
  double node_s;
  double node_t;
  double gap;
};

using RdCheckResult = std::variant<RdPartition, RdViolation>;

// Certifies rd-continuity of a family at resolution eps over the shared
// grid.  Members must share one grid; dimensions may differ.
//
// Semantics at grid resolution: a ball around a center is charged with
// every node it contains, plus the nearest bracketing node of any
// continuum stretch it covers (unsampled points between two in-segment
// nodes answer for the closer node).  This keeps a jump across a gap or
// at a right-scattered point invisible, while a jump at a right-dense
// point starves the cover and surfaces as a violation.
RdCheckResult certify_rd_continuity(std::span<const GridFunction> family,
                                    double eps);

RdCheckResult check_rd_continuity(const GridFunction& u, double eps);

// Merges a certified partition into increasing knots: within one knot
// cell [xi_j, xi_{j+1}) every member varies by less than eps over grid
// nodes.  When the overlap of consecutive balls is nonempty the smallest
// node of the overlap becomes the switch point.
std::variant<std::vector<double>, RdViolation> equicontinuity_partition(
    std::span<const GridFunction> family, double eps);

// Largest sup-norm value gap between two nodes, over the family.
double family_gap(std::span<const GridFunction> family, std::size_t i,
                  std::size_t j);

}  // namespace tscal
