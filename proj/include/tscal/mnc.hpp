#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tscal/grid.hpp"

namespace tscal {

// Envelope for the entries of a sequence beyond its stored prefix.
// Position k >= 0 past the prefix is bounded by
//
//   s(k) = c * r^k + v + (k < k0 ? w : 0)
//
// with c, v, w >= 0 and 0 <= r < 1.  s is nonincreasing, so
// sup_{j >= k} s(j) = s(k) and lim s(k) = v.  The composite form is closed
// under scaling and addition without losing the limit, which is what the
// noncompactness measures read off.
class TailProfile {
 public:
  TailProfile() = default;

  static TailProfile zero() { return {}; }
  // s(k) = c * r^k.
  static TailProfile geometric(double c, double r);
  // s(k) = v for k < k0, 0 after; k0 absent means v persists forever.
  static TailProfile const_until(double v, std::optional<long long> k0);

  double sup_at(long long k) const;
  double limit() const { return v_; }
  bool is_zero() const { return c_ == 0 && v_ == 0 && w_ == 0; }

  TailProfile scaled(double lam) const;  // envelope for |lam| * s
  friend TailProfile sum_envelope(const TailProfile& a, const TailProfile& b);

  std::string describe() const;

 private:
  double c_ = 0, r_ = 0;  // geometric part
  double v_ = 0;          // persistent level
  double w_ = 0;          // transient level, active while k < k0_
  long long k0_ = 0;
};

TailProfile sum_envelope(const TailProfile& a, const TailProfile& b);

// "zero" | "geometric(c,r)" | "const_until(v,k0)" | "const_until(v,inf)".
// Throws std::invalid_argument on malformed input.
TailProfile parse_tail_profile(std::string_view text);

// A sequence with explicitly stored head entries and a tail envelope that
// is treated as attained: the envelope is the data for everything past
// the prefix.
struct TailedSequence {
  Eigen::VectorXd prefix;
  TailProfile tail;

  Eigen::Index prefix_len() const { return prefix.size(); }
  double sup_norm() const;
  // sup of |entries| from position n on.
  double sup_from(Eigen::Index n) const;
  double tail_limit() const { return tail.limit(); }
};

// Finite-dimensional vector viewed as a sequence with zero tail.
TailedSequence truncation(Eigen::VectorXd x);

TailedSequence scaled(const TailedSequence& x, double lam);
// ca * a + cb * b.  Prefix lengths must match.
TailedSequence combine(const TailedSequence& a, const TailedSequence& b,
                       double ca, double cb);
// Sup-norm of a - b.  Exact when both tails are zero, otherwise the tail
// part is the triangle-inequality envelope.  Envelopes have no
// subtraction, so shared tail mass is double counted: the bound between a
// member and a convex recombination of it adds both tails even though the
// true distance past the prefix is zero.
double distance_bound(const TailedSequence& a, const TailedSequence& b);

using SequenceFamily = std::vector<TailedSequence>;

// Sublinear measure on bounded sequence families: monotone, homogeneous,
// subadditive, stable under closure and convex hull.
class SublinearMnc {
 public:
  virtual ~SublinearMnc() = default;
  virtual std::string_view name() const = 0;
  virtual double value(const SequenceFamily& f) const = 0;
  // K with value(X + r*ball) <= value(X) + K * r.
  virtual double unit_ball_constant() const = 0;
  // True when single points measure zero (noncompactness proper).
  virtual bool vanishes_on_singletons() const = 0;
};

// Limit of the uniform tail envelope: how far the family sits from the
// finitely supported sequences.
class HausdorffC0 final : public SublinearMnc {
 public:
  std::string_view name() const override { return "hausdorff-c0"; }
  double value(const SequenceFamily& f) const override;
  double unit_ball_constant() const override { return 1.0; }
  bool vanishes_on_singletons() const override { return true; }
};

// Largest member norm.  Sublinear but not a noncompactness measure:
// singletons do not vanish.
class SupNormMnc final : public SublinearMnc {
 public:
  std::string_view name() const override { return "sup-norm"; }
  double value(const SequenceFamily& f) const override;
  double unit_ball_constant() const override { return 1.0; }
  bool vanishes_on_singletons() const override { return false; }
};

// Largest pairwise distance.  Exact on zero-tail families; with live
// tails the pairwise bound double counts shared tail mass, so stability
// under convex recombination is only certified on zero-tail input.
class DiameterMnc final : public SublinearMnc {
 public:
  std::string_view name() const override { return "diameter"; }
  double value(const SequenceFamily& f) const override;
  double unit_ball_constant() const override { return 2.0; }
  bool vanishes_on_singletons() const override { return true; }
};

double hausdorff_c0(const SequenceFamily& f);

// max over rows y of Y of min over rows z of Z of |y - z|_inf.
double set_distance(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& Z);

// Largest pairwise sup-norm distance among the rows.
double point_diameter(const Eigen::MatrixXd& pts);

// Family of grid functions with per-member tail envelopes.  Member m at
// node i is the tailed sequence (values row i, tails[m] scaled by
// tail_scale[i]).  Tail entries are modeled as frozen in time except for
// that scale factor.
struct FunctionFamily {
  std::vector<GridFunction> members;
  std::vector<TailProfile> tails;
  Eigen::VectorXd tail_scale;

  FunctionFamily(std::vector<GridFunction> m, std::vector<TailProfile> tp);
  const Grid& grid() const { return *members.front().grid; }
  SequenceFamily at(std::size_t node) const;
};

// Member-wise cumulative integral from the left endpoint; tail scales
// integrate along.
FunctionFamily integral_family(const FunctionFamily& f);

// Largest member shift between two nodes, tail envelope included.
double family_shift(const FunctionFamily& f, std::size_t i, std::size_t j);

struct ContinuityBound {
  double lhs;  // |mu(X(t_i)) - mu(X(t_j))|
  double rhs;  // K * largest member shift
};
ContinuityBound mnc_continuity_bound(const FunctionFamily& f,
                                     const SublinearMnc& mnc, std::size_t i,
                                     std::size_t j);

struct IntegralTrace {
  std::vector<double> lhs;  // mu of the integral family at each node
  std::vector<double> rhs;  // integral of node-wise mu up to each node
};
// Requires the members to pass the equicontinuity certificate at eps;
// throws std::invalid_argument when they do not.
IntegralTrace mnc_integral_inequality(const FunctionFamily& f,
                                      const SublinearMnc& mnc, double eps);

struct FunctionSpaceMnc {
  double value;     // omega at the finest scale + largest node-wise mu
  double sup_term;  // largest node-wise mu
  std::vector<std::pair<double, double>> omega;  // (eps, modulus)
  bool omega_monotone;  // modulus nonincreasing as eps shrinks
};
FunctionSpaceMnc mnc_on_function_space(const FunctionFamily& f,
                                       const SublinearMnc& mnc,
                                       int n_scales = 8);

struct AxiomCheck {
  std::string name;
  int trials = 0;
  double worst = 0;  // largest observed violation
  bool pass = false;
};
struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass = false;
};

using FamilyGenerator = std::function<SequenceFamily(std::mt19937_64&)>;

// Family with shared prefix length, random entries and tail envelopes.
SequenceFamily random_family(std::mt19937_64& rng, int max_members = 6,
                             int prefix_len = 4);

// Same shape with every tail zero.  Convexity properties of the pairwise
// distance bound only hold exactly on this domain; see distance_bound.
SequenceFamily random_point_family(std::mt19937_64& rng, int max_members = 6,
                                   int prefix_len = 4);

// Randomized property checks: monotonicity under subfamilies, stability
// under limit members and convex combinations, convexity across
// interpolated families, nested chains shrinking to a point, absolute
// homogeneity, subadditivity, and (where claimed) vanishing on
// singletons.
AxiomReport axiom_suite(const SublinearMnc& mnc, const FamilyGenerator& gen,
                        int trials, std::uint64_t seed);

}  // namespace tscal
