#include "tscal/time_scale.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tscal {

TimeScale::TimeScale(std::vector<Segment> segments, double snap_tol)
    : snap_tol_(snap_tol) {
  if (segments.empty())
    throw std::invalid_argument("time scale must be non-empty");
  if (!(snap_tol >= 0.0))
    throw std::invalid_argument("snap tolerance must be non-negative");
  for (const auto& s : segments) {
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi))
      throw std::invalid_argument("segment bounds must be finite");
    if (s.lo > s.hi)
      throw std::invalid_argument("segment must satisfy lo <= hi");
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) {
              return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
            });
  // Merge overlapping and touching segments.
  for (const auto& s : segments) {
    if (!segments_.empty() && s.lo <= segments_.back().hi) {
      segments_.back().hi = std::max(segments_.back().hi, s.hi);
    } else {
      segments_.push_back(s);
    }
  }
}

TimeScale TimeScale::from_pairs(const std::vector<std::pair<double, double>>& p,
                                double snap_tol) {
  std::vector<Segment> segs;
  segs.reserve(p.size());
  for (const auto& [lo, hi] : p) segs.push_back({lo, hi});
  return TimeScale(std::move(segs), snap_tol);
}

TimeScale TimeScale::discrete(double lo, double hi, double step) {
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  std::vector<Segment> segs;
  for (long k = 0;; ++k) {
    const double t = lo + static_cast<double>(k) * step;
    if (t > hi + step * 1e-12) break;
    segs.push_back({t, t});
  }
  return TimeScale(std::move(segs));
}

bool TimeScale::contains(double t) const {
  if (!std::isfinite(t)) return false;
  // Last segment with lo <= t (plus tolerance for a near-lo query).
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (t < s.lo - snap_tol_) return false;  // in the gap below s
    if (t <= s.hi + snap_tol_) return true;  // inside or snapped to s
  }
  return false;
}

double TimeScale::snap(double t) const {
  if (std::isfinite(t)) {
    for (const Segment& s : segments_) {
      if (t < s.lo - snap_tol_) break;
      if (t < s.lo) return s.lo;                    // snapped from below
      if (t <= s.hi) return t;                      // exact member
      if (t <= s.hi + snap_tol_) return s.hi;       // snapped from above
    }
  }
  std::ostringstream os;
  os << "t=" << t << " is not a member of the time scale";
  throw std::invalid_argument(os.str());
}

std::size_t TimeScale::segment_index(double t) const {
  // Pre: t is a snapped member.
  std::size_t lo = 0, hi = segments_.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (segments_[mid].lo <= t) lo = mid; else hi = mid;
  }
  return lo;
}

double TimeScale::sigma(double t0) const {
  const double t = snap(t0);
  const std::size_t i = segment_index(t);
  if (t < segments_[i].hi) return t;
  if (i + 1 < segments_.size()) return segments_[i + 1].lo;
  return t;  // maximum: inf of empty set is sup T
}

double TimeScale::rho(double t0) const {
  const double t = snap(t0);
  const std::size_t i = segment_index(t);
  if (t > segments_[i].lo) return t;
  if (i > 0) return segments_[i - 1].hi;
  return t;  // minimum: sup of empty set is inf T
}

PointClass TimeScale::classify(double t0) const {
  const double t = snap(t0);
  return PointClass{
      sigma(t) > t ? Density::scattered : Density::dense,
      rho(t) < t ? Density::scattered : Density::dense,
  };
}

TimeScale TimeScale::kappa() const {
  // max is left-scattered exactly when the last segment is an isolated
  // point and another segment lies below it.
  const Segment& last = segments_.back();
  if (segments_.size() >= 2 && last.lo == last.hi) {
    std::vector<Segment> segs(segments_.begin(), segments_.end() - 1);
    return TimeScale(std::move(segs), snap_tol_);
  }
  return *this;
}

TimeScale TimeScale::restricted(double a0, double b0) const {
  const double a = snap(a0);
  const double b = snap(b0);
  if (a > b) throw std::invalid_argument("window needs a <= b");
  std::vector<Segment> segs;
  for (const Segment& s : segments_) {
    if (s.hi < a || s.lo > b) continue;
    segs.push_back({std::max(s.lo, a), std::min(s.hi, b)});
  }
  return TimeScale(std::move(segs), snap_tol_);
}

TsInterval::TsInterval(TimeScale parent, double a, double b)
    : parent_(std::move(parent)),
      scale_(parent_.restricted(a, b)),
      a_(parent_.snap(a)),
      b_(parent_.snap(b)) {}

TimeScale read_scale_text(std::istream& in, double snap_tol) {
  std::vector<Segment> segs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double lo, hi;
    if (ls >> lo) {
      if (!(ls >> hi))
        throw std::invalid_argument("scale line needs two numbers: " + line);
      segs.push_back({lo, hi});
    }
  }
  return TimeScale(std::move(segs), snap_tol);
}

void write_scale_text(std::ostream& out, const TimeScale& scale) {
  out.precision(17);
  for (const Segment& s : scale.segments()) out << s.lo << " " << s.hi << "\n";
}

}  // namespace tscal
