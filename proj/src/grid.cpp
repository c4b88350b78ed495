#include "tscal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tscal {

Grid::Grid(TsInterval interval, std::vector<double> nodes, double dense_step)
    : interval_(std::move(interval)),
      nodes_(std::move(nodes)),
      dense_step_(dense_step) {
  if (nodes_.empty()) throw std::invalid_argument("grid needs nodes");
  const auto& segs = interval_.scale().segments();
  seg_of_.reserve(nodes_.size());
  std::size_t s = 0;
  double prev = nodes_.front() - 1.0;
  for (const double t : nodes_) {
    if (!(t > prev) && seg_of_.size() > 0)
      throw std::invalid_argument("grid nodes must be strictly increasing");
    prev = t;
    while (s < segs.size() && t > segs[s].hi) ++s;
    if (s >= segs.size() || t < segs[s].lo) {
      std::ostringstream os;
      os << "grid node " << t << " lies outside the window's scale";
      throw std::invalid_argument(os.str());
    }
    seg_of_.push_back(s);
  }
  // Every segment endpoint must be present.
  std::size_t i = 0;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    bool lo_seen = false, hi_seen = false;
    while (i < nodes_.size() && seg_of_[i] == k) {
      if (nodes_[i] == segs[k].lo) lo_seen = true;
      if (nodes_[i] == segs[k].hi) hi_seen = true;
      ++i;
    }
    if (!lo_seen || !hi_seen)
      throw std::invalid_argument("grid must contain every segment endpoint");
  }
}

std::size_t Grid::index_of(double t) const {
  const double tol = interval_.scale().snap_tol();
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
  if (it != nodes_.end() && std::abs(*it - t) <= tol)
    return static_cast<std::size_t>(it - nodes_.begin());
  std::ostringstream os;
  os << "t=" << t << " is not a grid node";
  throw std::invalid_argument(os.str());
}

Grid build_grid(const TsInterval& interval, double h) {
  if (!(h > 0)) throw std::invalid_argument("grid step must be positive");
  std::vector<double> nodes;
  for (const Segment& s : interval.scale().segments()) {
    if (s.lo == s.hi) {
      nodes.push_back(s.lo);
      continue;
    }
    const double len = s.hi - s.lo;
    auto n = static_cast<std::size_t>(std::ceil(len / h));
    if (n == 0) n = 1;
    while (len / static_cast<double>(n) > h) ++n;  // guards rounding up
    const double step = len / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
      nodes.push_back(s.lo + static_cast<double>(k) * step);
    nodes.push_back(s.hi);
  }
  return Grid(interval, std::move(nodes), h);
}

GridFunction::GridFunction(GridPtr g, Eigen::MatrixXd v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw std::invalid_argument("grid function needs a grid");
  if (static_cast<std::size_t>(values.rows()) != grid->size())
    throw std::invalid_argument("grid function needs one row per node");
}

bool same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid == b.grid) return true;
  if (!a.grid || !b.grid) return false;
  return a.grid->nodes() == b.grid->nodes();
}

GridFunction sample(GridPtr grid,
                    const std::function<Eigen::VectorXd(double)>& f) {
  const Eigen::VectorXd first = f(grid->node(0));
  Eigen::MatrixXd values(grid->size(), first.size());
  values.row(0) = first.transpose();
  for (std::size_t i = 1; i < grid->size(); ++i)
    values.row(i) = f(grid->node(i)).transpose();
  return GridFunction(std::move(grid), std::move(values));
}

GridFunction sample_scalar(GridPtr grid,
                           const std::function<double(double)>& f) {
  Eigen::MatrixXd values(grid->size(), 1);
  for (std::size_t i = 0; i < grid->size(); ++i) values(i, 0) = f(grid->node(i));
  return GridFunction(std::move(grid), std::move(values));
}

}  // namespace tscal
