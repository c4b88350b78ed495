#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace tscal {

// One closed interval [lo, hi] of the real line.  lo == hi models an
// isolated point.
struct Segment {
  double lo;
  double hi;
};

enum class Density { dense, scattered };

struct PointClass {
  Density right;
  Density left;
  bool right_scattered() const { return right == Density::scattered; }
  bool left_scattered() const { return left == Density::scattered; }
};

// A nonempty closed subset of R stored as a finite union of disjoint
// closed intervals, ordered increasingly.  Immutable after construction.
//
// Jump operators follow the usual conventions: the forward jump at the
// maximum is the maximum itself, the backward jump at the minimum is the
// minimum itself.
class TimeScale {
 public:
  // Canonicalizes: sorts, merges overlapping and touching segments.
  // Throws std::invalid_argument for an empty list, non-finite bounds,
  // or lo > hi.
  explicit TimeScale(std::vector<Segment> segments, double snap_tol = 1e-12);

  static TimeScale from_pairs(const std::vector<std::pair<double, double>>& p,
                              double snap_tol = 1e-12);
  // Helper for discrete scales {lo, lo+step, ..., hi}.
  static TimeScale discrete(double lo, double hi, double step = 1.0);

  const std::vector<Segment>& segments() const { return segments_; }
  double min() const { return segments_.front().lo; }
  double max() const { return segments_.back().hi; }
  double snap_tol() const { return snap_tol_; }

  bool contains(double t) const;
  // Maps a query within snap_tol of a segment endpoint onto that endpoint;
  // identity inside segments.  Throws std::invalid_argument when t is not
  // a member.
  double snap(double t) const;

  double sigma(double t) const;  // forward jump
  double rho(double t) const;    // backward jump
  double graininess(double t) const { return sigma(t) - t; }
  PointClass classify(double t) const;

  // Drops the maximum when it is left-scattered; identity otherwise.
  TimeScale kappa() const;

  // Intersection with [a, b]; a and b must be members.
  TimeScale restricted(double a, double b) const;

  bool operator==(const TimeScale& o) const { return segments_ == o.segments_ && snap_tol_ == o.snap_tol_; }

 private:
  std::vector<Segment> segments_;
  double snap_tol_;

  // Index of the segment owning a member point (post-snap).
  std::size_t segment_index(double t) const;
};

inline bool operator==(const Segment& a, const Segment& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

// A window [a, b] over a parent scale, carrying both the parent and the
// restriction.  On the restriction the right endpoint b is right-dense by
// convention (sigma(b) = b), which is exactly what the clipped scale
// reports at its maximum.
class TsInterval {
 public:
  TsInterval(TimeScale parent, double a, double b);

  const TimeScale& parent() const { return parent_; }
  const TimeScale& scale() const { return scale_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double sigma(double t) const { return scale_.sigma(t); }
  double rho(double t) const { return scale_.rho(t); }
  double graininess(double t) const { return scale_.graininess(t); }
  PointClass classify(double t) const { return scale_.classify(t); }

  bool operator==(const TsInterval& o) const {
    return a_ == o.a_ && b_ == o.b_ && parent_ == o.parent_;
  }

 private:
  TimeScale parent_;
  TimeScale scale_;
  double a_, b_;
};

// Plain-text serialization: one "lo hi" pair per line, '#' starts a comment.
TimeScale read_scale_text(std::istream& in, double snap_tol = 1e-12);
void write_scale_text(std::ostream& out, const TimeScale& scale);

}  // namespace tscal
