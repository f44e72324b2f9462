// fanstalk: pulling binomials back along the stacky-fan substitution (rows of
// M), splitting off the monomial factor, reducing non-reduced pure parts in
// positive characteristic, deciding schön and simple-normal-crossing verdicts
// per chart, and computing the problematic primes of a system.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_TRANSFORM_HPP
#define FANSTALK_TRANSFORM_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fanstalk/arrangement.hpp"
#include "fanstalk/fantastack.hpp"

namespace fanstalk {

/// Pullback of one member onto chart coordinates: monomial factor W plus, for
/// pure members, the two-sided part x^U - lambda x^V with min(U, V) = 0.
/// `multiplicity` records the p-power extracted by reduction (default 1);
/// `irrational_root` flags a reduction blocked because lambda has no exact
/// rational root of the required degree.
struct PulledBinomial {
  std::size_t source = 0; // 0-based member index
  BinomialKind kind = BinomialKind::Monomial;
  IntVec w;
  IntVec u, v;      // Pure only; same length as w
  Rat lambda = 1;
  Rat unit = 1;
  Int multiplicity = 1;
  bool irrational_root = false;

  bool is_pure() const { return kind == BinomialKind::Pure; }

  /// Signed exponent vector of the residual torus form x^{U-V} = lambda.
  IntVec torus_exponent() const { return sub(u, v); }
};

/// Pulls every member back along M^T: W = min(M^T(C+A), M^T(C+B)) and U, V
/// the remainders, so that W + U = M^T(C+A) and W + V = M^T(C+B) exactly.
inline std::vector<PulledBinomial> pullback(const BinomialSystem& system,
                                            const StackyFan& sf) {
  if (system.order.size() != sf.m())
    throw Error(ErrorKind::DimensionMismatch,
                "system and stacky fan have different ambient dimensions");
  std::vector<PulledBinomial> out;
  for (std::size_t i = 0; i < system.members.size(); ++i) {
    const Binomial& b = system.members[i];
    PulledBinomial pb;
    pb.source = i;
    pb.kind = b.kind;
    pb.unit = b.unit;
    if (b.kind == BinomialKind::Monomial) {
      pb.w = sf.transpose_apply(b.c);
    } else {
      IntVec ta = sf.transpose_apply(add(b.c, b.a));
      IntVec tb = sf.transpose_apply(add(b.c, b.b));
      pb.w = vmin(ta, tb);
      pb.u = sub(ta, pb.w);
      pb.v = sub(tb, pb.w);
      pb.lambda = b.lambda;
    }
    out.push_back(std::move(pb));
  }
  return out;
}

namespace detail {

/// In-place reduction of a pure part (U, V, lambda) at characteristic p:
/// repeatedly divide the exponents by p while lambda admits an exact rational
/// p-th root.  Returns the extracted multiplicity; sets the flag if exponent
/// divisibility holds but the root does not exist over Q.
inline Int reduce_exponents(IntVec& u, IntVec& v, Rat& lambda, const Int& p,
                            bool& irrational_root) {
  Int multiplicity = 1;
  if (p == 0) return multiplicity;
  unsigned pk = static_cast<unsigned>(p);
  for (;;) {
    bool divisible = !(is_zero(u) && is_zero(v));
    for (const Int& e : u)
      if (e % p != 0) divisible = false;
    for (const Int& e : v)
      if (e % p != 0) divisible = false;
    if (!divisible) break;
    auto root = exact_kth_root(lambda, pk);
    if (!root) {
      irrational_root = true;
      break;
    }
    for (Int& e : u) e /= p;
    for (Int& e : v) e /= p;
    lambda = *root;
    multiplicity *= p;
  }
  return multiplicity;
}

} // namespace detail

/// Reduction of a pulled pure part at characteristic p (identity at p = 0).
inline PulledBinomial reduce_pure(const PulledBinomial& pb, const Int& p) {
  if (!pb.is_pure())
    throw Error(ErrorKind::NotPure, "reduction applies to pure binomials");
  PulledBinomial out = pb;
  out.multiplicity =
      pb.multiplicity *
      detail::reduce_exponents(out.u, out.v, out.lambda, p, out.irrational_root);
  return out;
}

/// Reduction of an abstract pure binomial at characteristic p; the extracted
/// p-power is returned alongside (the Binomial type does not carry one).
struct ReducedBinomial {
  Binomial binomial;
  Int multiplicity = 1;
  bool irrational_root = false;
};

inline ReducedBinomial reduce_pure(const Binomial& b, const Int& p) {
  if (b.kind != BinomialKind::Pure)
    throw Error(ErrorKind::NotPure, "reduction applies to pure binomials");
  ReducedBinomial out;
  out.binomial = b;
  out.multiplicity = detail::reduce_exponents(out.binomial.a, out.binomial.b,
                                              out.binomial.lambda, p,
                                              out.irrational_root);
  return out;
}

/// Schön in a chart: one side of the pure part is a unit monomial there,
/// i.e. supp(U) or supp(V) consists of invertible coordinates.  Monomial
/// members are vacuously schön.
inline bool is_schoen(const PulledBinomial& pb, const Chart& chart) {
  if (!pb.is_pure()) return true;
  auto side_invertible = [&](const IntVec& exps) {
    for (std::size_t j : support(exps))
      if (!chart.is_invertible(j)) return false;
    return true;
  };
  return side_invertible(pb.u) || side_invertible(pb.v);
}

/// Verdict of the simple-normal-crossing test in one chart.
struct SncReport {
  bool snc = true;
  // 0-based member indices of subsets whose residual forms fail the rank
  // condition (consistent subsets only; inconsistent ones have empty loci).
  std::vector<std::vector<std::size_t>> failing_subsets;
};

/// Simple-normal-crossing test for the reduced preimage in one chart.  All
/// pure members must be schön there (error otherwise).  The monomial part is
/// normal crossings by construction; the residual factors are tested by the
/// subset rank criterion: every subset of residuals with consistent lambda
/// relations must have exponent vectors of full rank over the working field
/// (Q in characteristic 0, F_p otherwise).  This subsumes pairwise
/// distinctness and smoothness of each reduced factor.
inline SncReport is_snc_chart(const std::vector<PulledBinomial>& pbs,
                              const Chart& chart, const Int& p = 0) {
  std::vector<TorusForm> residuals;
  for (const PulledBinomial& pb : pbs) {
    if (!pb.is_pure()) continue;
    if (!is_schoen(pb, chart))
      throw Error(ErrorKind::NotSchoen,
                  "member " + std::to_string(pb.source + 1) +
                      " is not schön in this chart");
    PulledBinomial red = reduce_pure(pb, p);
    residuals.push_back({red.torus_exponent(), red.lambda});
  }
  detail::check_subset_cap(residuals.size());

  SncReport report;
  std::size_t a = residuals.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << a); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < a; ++j)
      if (mask & (std::size_t{1} << j)) idx.push_back(j);
    std::vector<TorusForm> sub;
    for (std::size_t j : idx) sub.push_back(residuals[j]);
    if (!consistent(sub, p)) continue;
    IntMat rows;
    for (const TorusForm& f : sub) rows.push_back(f.d);
    std::size_t rank = p == 0 ? rank_rational(rows) : rank_mod_p(rows, p);
    if (rank != idx.size()) {
      report.snc = false;
      // Translate residual positions back to member indices.
      std::vector<std::size_t> members;
      std::size_t pos = 0;
      for (const PulledBinomial& pb : pbs) {
        if (!pb.is_pure()) continue;
        if (std::find(idx.begin(), idx.end(), pos) != idx.end())
          members.push_back(pb.source);
        ++pos;
      }
      report.failing_subsets.push_back(std::move(members));
    }
  }
  return report;
}

/// Signed exponent matrix of the system's pure members: row j = A_j - B_j.
inline IntMat exponent_matrix(const BinomialSystem& system) {
  IntMat rows;
  for (const Binomial& b : system.members)
    if (b.kind == BinomialKind::Pure) rows.push_back(sub(b.a, b.b));
  return rows;
}

/// Problematic primes of the system: for every nonempty subset I of pure
/// members, take the gcd g_I of all k_I-by-k_I minors of the subset's
/// exponent matrix (k_I its rational rank); the result is the union of the
/// prime divisors of the g_I.  At any prime outside the set, every subset
/// keeps its rank modulo p.
inline std::vector<Int> problematic_primes(const BinomialSystem& system) {
  IntMat rows = exponent_matrix(system);
  if (rows.empty())
    throw Error(ErrorKind::NotPure, "system has no pure members");
  detail::check_subset_cap(rows.size());
  std::vector<Int> primes;
  std::size_t a = rows.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << a); ++mask) {
    IntMat sub;
    for (std::size_t j = 0; j < a; ++j)
      if (mask & (std::size_t{1} << j)) sub.push_back(rows[j]);
    std::size_t k = rank_rational(sub);
    Int g = gcd_of_minors(sub, k);
    for (const Int& q : prime_divisors(g)) primes.push_back(q);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

/// The pure members' torus forms D = A - B, lambda (reduced at p), with their
/// 0-based member indices; exact duplicates are dropped.  This is the input
/// to the arrangement analysis.
struct SystemForms {
  std::vector<TorusForm> forms;
  std::vector<std::size_t> sources; // aligned member indices
};

inline SystemForms torus_forms(const BinomialSystem& system, const Int& p) {
  SystemForms out;
  for (std::size_t i = 0; i < system.members.size(); ++i) {
    const Binomial& b = system.members[i];
    if (b.kind != BinomialKind::Pure) continue;
    ReducedBinomial red = reduce_pure(b, p);
    TorusForm f{sub(red.binomial.a, red.binomial.b), red.binomial.lambda};
    bool seen = false;
    for (const TorusForm& g : out.forms)
      if (g == f) { seen = true; break; }
    if (seen) continue;
    out.forms.push_back(std::move(f));
    out.sources.push_back(i);
  }
  return out;
}

} // namespace fanstalk

#endif // FANSTALK_TRANSFORM_HPP
