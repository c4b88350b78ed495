#include "tscal/mnc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tscal/common.hpp"
#include "tscal/delta_calculus.hpp"
#include "tscal/rd_continuity.hpp"

namespace tscal {

TailProfile TailProfile::geometric(double c, double r) {
  if (!(c >= 0) || !(r >= 0) || !(r < 1))
    throw std::invalid_argument("geometric tail needs c >= 0 and 0 <= r < 1");
  TailProfile p;
  p.c_ = c;
  p.r_ = r;
  return p;
}

TailProfile TailProfile::const_until(double v, std::optional<long long> k0) {
  if (!(v >= 0)) throw std::invalid_argument("tail level must be >= 0");
  if (k0 && *k0 < 0) throw std::invalid_argument("tail cutoff must be >= 0");
  TailProfile p;
  if (k0) {
    if (*k0 == 0) return p;  // "v before position 0" covers nothing
    p.w_ = v;
    p.k0_ = *k0;
  } else {
    p.v_ = v;
  }
  return p;
}

double TailProfile::sup_at(long long k) const {
  double s = v_;
  if (c_ > 0) s += c_ * std::pow(r_, static_cast<double>(k));
  if (k < k0_) s += w_;
  return s;
}

TailProfile TailProfile::scaled(double lam) const {
  const double a = std::abs(lam);
  if (!std::isfinite(a)) throw std::invalid_argument("non-finite scale");
  TailProfile p = *this;
  p.c_ *= a;
  p.v_ *= a;
  p.w_ *= a;
  return p;
}

TailProfile sum_envelope(const TailProfile& a, const TailProfile& b) {
  TailProfile p;
  p.c_ = a.c_ + b.c_;
  p.r_ = std::max(a.r_, b.r_);
  p.v_ = a.v_ + b.v_;
  p.w_ = a.w_ + b.w_;
  p.k0_ = std::max(a.k0_, b.k0_);
  return p;
}

namespace {

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::string TailProfile::describe() const {
  std::string out;
  auto add = [&out](const std::string& part) {
    if (!out.empty()) out += "+";
    out += part;
  };
  if (c_ > 0) add("geometric(" + fmt_num(c_) + "," + fmt_num(r_) + ")");
  if (w_ > 0)
    add("const_until(" + fmt_num(w_) + "," + std::to_string(k0_) + ")");
  if (v_ > 0) add("const_until(" + fmt_num(v_) + ",inf)");
  if (out.empty()) out = "zero";
  return out;
}

TailProfile parse_tail_profile(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "zero") return TailProfile::zero();

  auto args_of = [&s](std::string_view head) -> std::optional<std::string> {
    if (s.size() <= head.size() + 1 || s.compare(0, head.size(), head) != 0)
      return std::nullopt;
    if (s[head.size()] != '(' || s.back() != ')') return std::nullopt;
    return s.substr(head.size() + 1, s.size() - head.size() - 2);
  };
  auto to_num = [](const std::string& t) {
    std::size_t used = 0;
    double x = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad number: " + t);
    return x;
  };

  if (auto args = args_of("geometric")) {
    const auto comma = args->find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("geometric tail needs two arguments");
    return TailProfile::geometric(to_num(args->substr(0, comma)),
                                  to_num(args->substr(comma + 1)));
  }
  if (auto args = args_of("const_until")) {
    const auto comma = args->find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("const_until tail needs two arguments");
    const double v = to_num(args->substr(0, comma));
    const std::string k = args->substr(comma + 1);
    if (k == "inf") return TailProfile::const_until(v, std::nullopt);
    return TailProfile::const_until(v, static_cast<long long>(to_num(k)));
  }
  throw std::invalid_argument("unknown tail profile: " + std::string(text));
}

double TailedSequence::sup_norm() const {
  const double head =
      prefix.size() == 0 ? 0.0 : prefix.cwiseAbs().maxCoeff();
  return std::max(head, tail.sup_at(0));
}

double TailedSequence::sup_from(Eigen::Index n) const {
  if (n < prefix.size()) {
    const double head = prefix.tail(prefix.size() - n).cwiseAbs().maxCoeff();
    return std::max(head, tail.sup_at(0));
  }
  return tail.sup_at(n - prefix.size());
}

TailedSequence truncation(Eigen::VectorXd x) {
  return {std::move(x), TailProfile::zero()};
}

TailedSequence scaled(const TailedSequence& x, double lam) {
  return {x.prefix * lam, x.tail.scaled(lam)};
}

TailedSequence combine(const TailedSequence& a, const TailedSequence& b,
                       double ca, double cb) {
  if (a.prefix.size() != b.prefix.size())
    throw std::invalid_argument("prefix lengths differ");
  return {ca * a.prefix + cb * b.prefix,
          sum_envelope(a.tail.scaled(ca), b.tail.scaled(cb))};
}

double distance_bound(const TailedSequence& a, const TailedSequence& b) {
  if (a.prefix.size() != b.prefix.size())
    throw std::invalid_argument("prefix lengths differ");
  const double head =
      a.prefix.size() == 0 ? 0.0
                           : (a.prefix - b.prefix).cwiseAbs().maxCoeff();
  if (a.tail.is_zero() && b.tail.is_zero()) return head;
  return std::max(head, sum_envelope(a.tail, b.tail).sup_at(0));
}

double HausdorffC0::value(const SequenceFamily& f) const {
  double v = 0;
  for (const TailedSequence& x : f) v = std::max(v, x.tail_limit());
  return v;
}

double SupNormMnc::value(const SequenceFamily& f) const {
  double v = 0;
  for (const TailedSequence& x : f) v = std::max(v, x.sup_norm());
  return v;
}

double DiameterMnc::value(const SequenceFamily& f) const {
  double v = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      v = std::max(v, distance_bound(f[i], f[j]));
  return v;
}

double hausdorff_c0(const SequenceFamily& f) { return HausdorffC0{}.value(f); }

double set_distance(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& Z) {
  if (Y.cols() != Z.cols())
    throw std::invalid_argument("point dimensions differ");
  if (Z.rows() == 0)
    throw std::invalid_argument("distance to an empty set is undefined");
  double worst = 0;
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < Z.rows(); ++j) {
      best = std::min(best,
                      (Y.row(i) - Z.row(j)).cwiseAbs().maxCoeff());
      if (best <= worst) break;  // cannot raise the outer max any more
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double point_diameter(const Eigen::MatrixXd& pts) {
  double v = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (Eigen::Index j = i + 1; j < pts.rows(); ++j)
      v = std::max(v, (pts.row(i) - pts.row(j)).cwiseAbs().maxCoeff());
  return v;
}

FunctionFamily::FunctionFamily(std::vector<GridFunction> m,
                               std::vector<TailProfile> tp)
    : members(std::move(m)), tails(std::move(tp)) {
  if (members.empty())
    throw std::invalid_argument("function family must be non-empty");
  if (tails.size() != members.size())
    throw std::invalid_argument("one tail profile per member required");
  for (const GridFunction& u : members)
    if (!same_grid(u, members.front()))
      throw std::invalid_argument("family members must share one grid");
  tail_scale = Eigen::VectorXd::Ones(
      static_cast<Eigen::Index>(members.front().grid->size()));
}

SequenceFamily FunctionFamily::at(std::size_t node) const {
  SequenceFamily f;
  f.reserve(members.size());
  for (std::size_t m = 0; m < members.size(); ++m)
    f.push_back({members[m].values.row(static_cast<Eigen::Index>(node))
                     .transpose(),
                 tails[m].scaled(tail_scale(static_cast<Eigen::Index>(node)))});
  return f;
}

FunctionFamily integral_family(const FunctionFamily& f) {
  std::vector<GridFunction> ints;
  ints.reserve(f.members.size());
  for (const GridFunction& u : f.members)
    ints.push_back({u.grid, cumulative_delta_integral(u)});
  FunctionFamily out(std::move(ints), f.tails);
  GridFunction scale_fn{f.members.front().grid, f.tail_scale};
  out.tail_scale = cumulative_delta_integral(scale_fn).col(0);
  return out;
}

double family_shift(const FunctionFamily& f, std::size_t i, std::size_t j) {
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  const double dscale = std::abs(f.tail_scale(ii) - f.tail_scale(jj));
  double shift = 0;
  for (std::size_t m = 0; m < f.members.size(); ++m) {
    const double head =
        (f.members[m].values.row(ii) - f.members[m].values.row(jj))
            .cwiseAbs()
            .maxCoeff();
    shift = std::max(shift,
                     std::max(head, f.tails[m].scaled(dscale).sup_at(0)));
  }
  return shift;
}

ContinuityBound mnc_continuity_bound(const FunctionFamily& f,
                                     const SublinearMnc& mnc, std::size_t i,
                                     std::size_t j) {
  const double mi = mnc.value(f.at(i));
  const double mj = mnc.value(f.at(j));
  return {std::abs(mi - mj),
          mnc.unit_ball_constant() * family_shift(f, i, j)};
}

IntegralTrace mnc_integral_inequality(const FunctionFamily& f,
                                      const SublinearMnc& mnc, double eps) {
  auto cert = equicontinuity_partition(
      std::span<const GridFunction>(f.members.data(), f.members.size()), eps);
  if (std::holds_alternative<RdViolation>(cert)) {
    const RdViolation& v = std::get<RdViolation>(cert);
    throw std::invalid_argument(
        "family is not rd-continuous at grid resolution near t=" +
        fmt_num(v.location));
  }

  const FunctionFamily fi = integral_family(f);
  const std::size_t n = f.grid().size();
  IntegralTrace tr;
  tr.lhs.resize(n);
  tr.rhs.resize(n);

  Eigen::VectorXd g(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    tr.lhs[i] = mnc.value(fi.at(i));
    g(static_cast<Eigen::Index>(i)) = mnc.value(f.at(i));
  }
  GridFunction gf{f.members.front().grid, g};
  const Eigen::MatrixXd cum = cumulative_delta_integral(gf);
  for (std::size_t i = 0; i < n; ++i)
    tr.rhs[i] = cum(static_cast<Eigen::Index>(i), 0);
  return tr;
}

FunctionSpaceMnc mnc_on_function_space(const FunctionFamily& f,
                                       const SublinearMnc& mnc,
                                       int n_scales) {
  if (n_scales < 1) throw std::invalid_argument("need at least one scale");
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  const auto& t = g.nodes();

  FunctionSpaceMnc out{};
  for (std::size_t i = 0; i < n; ++i)
    out.sup_term = std::max(out.sup_term, mnc.value(f.at(i)));

  const double width = t.back() - t.front();
  if (width > 0) {
    for (int k = 0; k < n_scales; ++k) {
      const double eps = width * std::pow(0.5, k);
      double om = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n && t[j] - t[i] <= eps; ++j)
          om = std::max(om, family_shift(f, i, j));
      out.omega.emplace_back(eps, om);
    }
  }
  out.omega_monotone = true;
  for (std::size_t k = 1; k < out.omega.size(); ++k)
    if (out.omega[k].second > out.omega[k - 1].second + 1e-15)
      out.omega_monotone = false;
  out.value =
      (out.omega.empty() ? 0.0 : out.omega.back().second) + out.sup_term;
  return out;
}

SequenceFamily random_family(std::mt19937_64& rng, int max_members,
                             int prefix_len) {
  std::uniform_int_distribution<int> n_dist(2, std::max(2, max_members));
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> cd(0.0, 2.0);
  std::uniform_real_distribution<double> rd(0.1, 0.9);
  std::uniform_real_distribution<double> vd(0.0, 1.5);
  std::uniform_int_distribution<int> k0d(-1, 8);

  const int n = n_dist(rng);
  SequenceFamily f;
  f.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    Eigen::VectorXd p(prefix_len);
    for (int i = 0; i < prefix_len; ++i) p(i) = entry(rng);
    TailProfile tail;
    switch (kind(rng)) {
      case 0: tail = TailProfile::zero(); break;
      case 1: tail = TailProfile::geometric(cd(rng), rd(rng)); break;
      default: {
        const int k0 = k0d(rng);
        tail = TailProfile::const_until(
            vd(rng), k0 < 0 ? std::nullopt
                            : std::optional<long long>(k0));
      }
    }
    f.push_back({std::move(p), tail});
  }
  return f;
}

SequenceFamily random_point_family(std::mt19937_64& rng, int max_members,
                                   int prefix_len) {
  std::uniform_int_distribution<int> n_dist(2, std::max(2, max_members));
  std::uniform_real_distribution<double> entry(-3.0, 3.0);

  const int n = n_dist(rng);
  SequenceFamily f;
  f.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    Eigen::VectorXd p(prefix_len);
    for (int i = 0; i < prefix_len; ++i) p(i) = entry(rng);
    f.push_back({std::move(p), TailProfile::zero()});
  }
  return f;
}

namespace {

struct Acc {
  AxiomCheck check;
  void note(double violation) {
    check.worst = std::max(check.worst, violation);
    ++check.trials;
  }
};

SequenceFamily scaled_family(const SequenceFamily& f, double lam) {
  SequenceFamily out;
  out.reserve(f.size());
  for (const TailedSequence& x : f) out.push_back(scaled(x, lam));
  return out;
}

}  // namespace

AxiomReport axiom_suite(const SublinearMnc& mnc, const FamilyGenerator& gen,
                        int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Acc monotone{{"monotone", 0, 0, false}};
  Acc closure{{"closure-stable", 0, 0, false}};
  Acc hull{{"hull-stable", 0, 0, false}};
  Acc interp{{"interpolation-convex", 0, 0, false}};
  Acc nested{{"nested-chain", 0, 0, false}};
  Acc homog{{"homogeneous", 0, 0, false}};
  Acc subadd{{"subadditive", 0, 0, false}};
  Acc singleton{{"singleton-kernel", 0, 0, false}};

  for (int trial = 0; trial < trials; ++trial) {
    SequenceFamily a = gen(rng);
    if (a.empty()) continue;
    const double va = mnc.value(a);

    {  // subfamilies measure no more
      std::vector<std::size_t> idx(a.size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::shuffle(idx.begin(), idx.end(), rng);
      SequenceFamily sub;
      for (std::size_t i = 0; i < (a.size() + 1) / 2; ++i)
        sub.push_back(a[idx[i]]);
      monotone.note(std::max(0.0, mnc.value(sub) - va));
    }

    {  // appending the limit of a convergent sequence changes nothing
      std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
      const TailedSequence& x = a[pick(rng)];
      const TailedSequence& y = a[pick(rng)];
      const TailedSequence z = combine(x, y, 0.4, 0.6);
      SequenceFamily b = a;
      for (int k = 1; k <= 45; ++k)
        b.push_back(combine(z, x, 1.0, std::pow(0.5, k)));
      const double vb = mnc.value(b);
      SequenceFamily c = b;
      c.push_back(z);
      closure.note(std::abs(mnc.value(c) - vb));
    }

    {  // convex combinations of members change nothing
      std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
      SequenceFamily b = a;
      for (int k = 0; k < 3; ++k) {
        const double w = unit(rng);
        b.push_back(combine(a[pick(rng)], a[pick(rng)], w, 1.0 - w));
      }
      hull.note(std::max(0.0, mnc.value(b) - va));
    }

    {  // measure of an interpolated family is below the interpolation
      SequenceFamily b = gen(rng);
      if (!b.empty()) {
        const double lam = unit(rng);
        SequenceFamily c;
        for (const TailedSequence& xa : a)
          for (const TailedSequence& xb : b)
            c.push_back(combine(xa, xb, lam, 1.0 - lam));
        interp.note(std::max(0.0, mnc.value(c) - lam * va -
                                      (1.0 - lam) * mnc.value(b)));
      }
    }

    {  // nested chain shrinking to the origin
      const int depth = 12;
      std::vector<SequenceFamily> chain(depth + 1);
      for (int k = depth; k >= 0; --k) {
        if (k < depth) chain[k] = chain[k + 1];
        for (const TailedSequence& x : a)
          chain[k].push_back(scaled(x, std::pow(0.5, k)));
      }
      double prev = std::numeric_limits<double>::infinity();
      double worst = 0;
      for (int k = 0; k <= depth; ++k) {
        const double v = mnc.value(chain[k]);
        worst = std::max(worst, v - prev);
        prev = v;
      }
      worst = std::max(worst, prev - va * std::pow(0.5, depth) - 1e-12);
      nested.note(std::max(0.0, worst));
    }

    {  // absolute homogeneity
      std::uniform_real_distribution<double> ld(-3.0, 3.0);
      const double lam = ld(rng);
      const double diff =
          std::abs(mnc.value(scaled_family(a, lam)) - std::abs(lam) * va);
      homog.note(diff / (1.0 + std::abs(lam) * va));
    }

    {  // pairwise sums measure below the sum of measures
      SequenceFamily b = gen(rng);
      if (!b.empty()) {
        SequenceFamily c;
        for (const TailedSequence& xa : a)
          for (const TailedSequence& xb : b)
            c.push_back(combine(xa, xb, 1.0, 1.0));
        subadd.note(std::max(0.0, mnc.value(c) - va - mnc.value(b)));
      }
    }

    if (mnc.vanishes_on_singletons()) {
      std::uniform_real_distribution<double> entry(-3.0, 3.0);
      Eigen::VectorXd x(a.front().prefix.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = entry(rng);
      SequenceFamily s{truncation(x)};
      singleton.note(std::abs(mnc.value(s)));
      SequenceFamily sg{
          {x, TailProfile::geometric(unit(rng) * 2.0, 0.3 + 0.6 * unit(rng))}};
      singleton.note(std::abs(mnc.value(sg)));
    }
  }

  constexpr double tol = 1e-9;
  AxiomReport report;
  report.all_pass = true;
  for (Acc* acc : {&monotone, &closure, &hull, &interp, &nested, &homog,
                   &subadd, &singleton}) {
    if (acc->check.trials == 0 && acc == &singleton) continue;
    acc->check.pass = acc->check.worst <= tol;
    report.all_pass = report.all_pass && acc->check.pass;
    report.checks.push_back(acc->check);
  }
  return report;
}

}  // namespace tscal
