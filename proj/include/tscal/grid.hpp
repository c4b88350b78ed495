#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "tscal/time_scale.hpp"

namespace tscal {

// Finite node set over a window of a time scale.  Every segment endpoint
// of the window's scale is a node; inside a segment nodes are uniform
// with spacing <= dense_step; across a gap consecutive nodes are exactly
// (t, sigma(t)).
class Grid {
 public:
  Grid(TsInterval interval, std::vector<double> nodes, double dense_step);

  const TsInterval& interval() const { return interval_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double dense_step() const { return dense_step_; }
  std::size_t size() const { return nodes_.size(); }
  double node(std::size_t i) const { return nodes_[i]; }

  // Segment (of interval().scale()) owning node i.
  std::size_t segment_of(std::size_t i) const { return seg_of_[i]; }
  // True when nodes i and i+1 straddle a gap; equivalently node i is
  // right-scattered in the window's scale.
  bool gap_after(std::size_t i) const {
    return i + 1 < nodes_.size() && seg_of_[i] != seg_of_[i + 1];
  }
  bool right_scattered(std::size_t i) const { return gap_after(i); }

  // Node index for a time value (within the scale's snap tolerance).
  // Throws std::invalid_argument when t is not a node.
  std::size_t index_of(double t) const;

 private:
  TsInterval interval_;
  std::vector<double> nodes_;
  double dense_step_;
  std::vector<std::size_t> seg_of_;
};

// Uniform-within-segments grid with dense spacing <= h.
Grid build_grid(const TsInterval& interval, double h);

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(const TsInterval& interval, double h) {
  return std::make_shared<const Grid>(build_grid(interval, h));
}

// Vector-valued function known at grid nodes.  Row i of values is the
// value at node i.
struct GridFunction {
  GridPtr grid;
  Eigen::MatrixXd values;  // size() x dim

  Eigen::Index dim() const { return values.cols(); }
  double t(std::size_t i) const { return grid->node(i); }

  GridFunction() = default;
  GridFunction(GridPtr g, Eigen::MatrixXd v);
};

// True when both functions live on the same node set (shared pointer or
// node-for-node equal grids).
bool same_grid(const GridFunction& a, const GridFunction& b);

GridFunction sample(GridPtr grid,
                    const std::function<Eigen::VectorXd(double)>& f);
GridFunction sample_scalar(GridPtr grid,
                           const std::function<double(double)>& f);

}  // namespace tscal
