// fanstalk: the residual arrangement in the torus — consistency (coset
// nonemptiness) of binomial subsystems, coset membership, the intersection
// poset with longest-chain ranks, the simple-arrangement rank test in a given
// characteristic, and the staged blowup schedule read off the poset.
//
// All reasoning is lattice and unit-group arithmetic on exponent vectors; no
// point set is ever materialized.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_ARRANGEMENT_HPP
#define FANSTALK_ARRANGEMENT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fanstalk/linalg.hpp"

namespace fanstalk {

/// Binomial condition on the torus: x^D = lambda with D a nonzero integer
/// exponent vector and lambda a nonzero rational.
struct TorusForm {
  IntVec d;
  Rat lambda = 1;

  bool operator==(const TorusForm& other) const = default;
};

/// Hard cap on the number of forms in subset-enumerating operations.
inline constexpr std::size_t kMaxSubsetForms = 12;

namespace detail {

/// Expresses target over the rows (rationally): target = sum c_j row_j.
/// Returns the minimal positive integer N with N*target in the row lattice
/// together with integer coefficients for N*target, or nothing if target is
/// outside the rational row span.  N = 1 means exact lattice membership.
struct SpanSolution {
  Int denominator;   // minimal N >= 1
  IntVec coeffs;     // integer coefficients with N*target = coeffs * rows
};

inline std::optional<SpanSolution> solve_in_row_span(const IntMat& rows,
                                                     const IntVec& target) {
  if (rows.empty()) {
    if (is_zero(target)) return SpanSolution{1, {}};
    return std::nullopt;
  }
  HermiteForm hf = hermite_form(rows);
  std::size_t r = hf.pivot_cols.size();
  // Unique rational coordinates over the echelon basis rows h_1..h_r.
  std::vector<Rat> q(r, Rat(0));
  std::vector<Rat> residue(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) residue[k] = Rat(target[k]);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t col = hf.pivot_cols[i];
    q[i] = residue[col] / Rat(hf.h[i][col]);
    for (std::size_t k = 0; k < target.size(); ++k)
      residue[k] -= q[i] * Rat(hf.h[i][k]);
  }
  for (const Rat& x : residue)
    if (x != 0) return std::nullopt;

  Int n = 1;
  for (const Rat& x : q) n = n / igcd(n, denominator(x)) * denominator(x);
  SpanSolution s;
  s.denominator = n;
  s.coeffs.assign(rows.size(), Int(0));
  for (std::size_t i = 0; i < r; ++i) {
    Rat scaled = q[i] * Rat(n); // integral by construction of n
    Int yi = numerator(scaled);
    for (std::size_t j = 0; j < rows.size(); ++j) s.coeffs[j] += yi * hf.u[i][j];
  }
  return s;
}

/// Product of lambda_j^{c_j} over a subset, as an exact rational.
inline Rat lambda_power_product(const std::vector<TorusForm>& forms,
                                const IntVec& coeffs) {
  Rat prod = 1;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    Int c = coeffs[j];
    if (c == 0) continue;
    Rat factor = rat_pow(forms[j].lambda, c < 0 ? Int(-c) : c);
    prod *= c < 0 ? Rat(1) / factor : factor;
  }
  return prod;
}

/// Whether an exact rational equals 1 in the working field: literally 1 in
/// characteristic 0, and image 1 in F_p otherwise (a non-p-unit never is).
inline bool is_unit_one(const Rat& x, const Int& p) {
  if (p == 0) return x == 1;
  if (padic_valuation(x, p) != 0) return false;
  return mod_p(x, p) == 1;
}

inline IntMat d_rows(const std::vector<TorusForm>& forms) {
  IntMat rows;
  for (const TorusForm& f : forms) rows.push_back(f.d);
  return rows;
}

} // namespace detail

/// Whether the subsystem {x^{D_j} = lambda_j} has solutions in the torus over
/// a field of the given characteristic: every integer relation among the D_j
/// must be matched by the corresponding lambda product being 1 (char 0) or
/// having image 1 in F_p (char p).  Checking a kernel basis suffices because
/// the relation lattice is saturated and the condition is multiplicative.
/// In characteristic p a lambda that is not a p-unit has no nonzero image,
/// so its coset is empty and the subset inconsistent.
inline bool consistent(const std::vector<TorusForm>& forms, const Int& p) {
  if (forms.empty())
    throw Error(ErrorKind::EmptySystem, "consistency of an empty subset");
  if (p != 0)
    for (const TorusForm& f : forms)
      if (padic_valuation(f.lambda, p) != 0) return false;
  IntMat rows = detail::d_rows(forms);
  IntMat relation_basis =
      integer_kernel_basis(transpose(rows, mat_cols(rows)), forms.size());
  for (const IntVec& c : relation_basis)
    if (!detail::is_unit_one(detail::lambda_power_product(forms, c), p))
      return false;
  return true;
}

/// Whether the form vanishes identically on the coset cut out by a consistent
/// set I.  Characteristic 0: D_f must lie in the integer span of the D_j with
/// matching lambda product.  Characteristic p: some p-power multiple p^k D_f
/// must lie in the span with lambda_f^{p^k} matching (Frobenius injectivity
/// makes the minimal k enough).
inline bool vanishes_on(const TorusForm& f, const std::vector<TorusForm>& I,
                        const Int& p) {
  if (!consistent(I, p))
    throw Error(ErrorKind::Inconsistent, "coset of an inconsistent subset");
  auto sol = detail::solve_in_row_span(detail::d_rows(I), f.d);
  if (!sol) return false;
  Int n = sol->denominator;
  if (p == 0) {
    if (n != 1) return false;
    return detail::is_unit_one(detail::lambda_power_product(I, sol->coeffs) /
                                   f.lambda,
                               p);
  }
  // n must be a p-power: p^k * D_f in the lattice for k with p^k = n.
  Int k_power = 1;
  while (k_power < n) k_power *= p;
  if (k_power != n) return false;
  Rat lhs = rat_pow(f.lambda, n);
  return detail::is_unit_one(detail::lambda_power_product(I, sol->coeffs) / lhs,
                             p);
}

// ---------------------------------------------------------------------------
// Intersection poset and blowup schedule.
// ---------------------------------------------------------------------------

/// One coset stratum: the closure subset (every form index vanishing on the
/// locus), its codimension (rational rank of the exponent lattice), and its
/// rank = length of the longest chain strictly below it (rank 0 = deepest).
struct PosetNode {
  std::vector<std::size_t> subset; // 0-based form indices, sorted, closed
  std::size_t codim = 0;
  std::size_t rank = 0;
};

/// Intersection poset of the consistent subsets' loci, ordered by locus
/// inclusion; edges are the cover pairs (deeper node, shallower node).
/// `simple` records the characteristic-p rank test over all consistent
/// subsets (always true in characteristic 0).
struct IntersectionPoset {
  std::vector<TorusForm> forms;
  Int characteristic = 0;
  std::vector<PosetNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool simple = true;
};

/// Stage r lists the node ids of rank r; stage 0 is blown up first.
struct BlowupSchedule {
  std::vector<std::vector<std::size_t>> stages;
};

/// Report of the simple-arrangement test: in characteristic p every
/// consistent subset's exponent matrix must keep its rational rank mod p.
struct SimpleReport {
  bool simple = true;
  std::vector<std::vector<std::size_t>> failing_subsets; // 0-based indices
};

namespace detail {

inline std::vector<TorusForm> pick(const std::vector<TorusForm>& forms,
                                   const std::vector<std::size_t>& idx) {
  std::vector<TorusForm> out;
  for (std::size_t j : idx) out.push_back(forms[j]);
  return out;
}

inline void check_subset_cap(std::size_t count) {
  if (count > kMaxSubsetForms)
    throw Error(ErrorKind::TooManyMembers,
                "subset enumeration capped at " +
                    std::to_string(kMaxSubsetForms) + " forms");
}

} // namespace detail

inline SimpleReport is_simple_arrangement(const std::vector<TorusForm>& forms,
                                          const Int& p) {
  detail::check_subset_cap(forms.size());
  SimpleReport report;
  if (p == 0 || forms.empty()) return report;
  std::size_t a = forms.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << a); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < a; ++j)
      if (mask & (std::size_t{1} << j)) idx.push_back(j);
    std::vector<TorusForm> sub = detail::pick(forms, idx);
    if (!consistent(sub, p)) continue;
    IntMat rows = detail::d_rows(sub);
    if (rank_mod_p(rows, p) != rank_rational(rows)) {
      report.simple = false;
      report.failing_subsets.push_back(idx);
    }
  }
  return report;
}

/// Builds the intersection poset of the arrangement at the given
/// characteristic.  Nodes are consistent subsets up to same-locus equivalence
/// (represented by their closure), ordered by locus inclusion, with ranks by
/// longest chain from the deepest strata.
inline IntersectionPoset intersection_poset(const std::vector<TorusForm>& forms,
                                            const Int& p) {
  detail::check_subset_cap(forms.size());
  IntersectionPoset poset;
  poset.forms = forms;
  poset.characteristic = p;
  poset.simple = is_simple_arrangement(forms, p).simple;

  std::size_t a = forms.size();
  std::vector<std::vector<std::size_t>> closures;
  for (std::size_t mask = 1; mask < (std::size_t{1} << a); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < a; ++j)
      if (mask & (std::size_t{1} << j)) idx.push_back(j);
    std::vector<TorusForm> sub = detail::pick(forms, idx);
    if (!consistent(sub, p)) continue;
    std::vector<std::size_t> closure;
    for (std::size_t j = 0; j < a; ++j)
      if (vanishes_on(forms[j], sub, p)) closure.push_back(j);
    closures.push_back(std::move(closure));
  }
  std::sort(closures.begin(), closures.end());
  closures.erase(std::unique(closures.begin(), closures.end()), closures.end());

  std::vector<PosetNode> nodes;
  for (auto& c : closures) {
    PosetNode node;
    node.codim = rank_rational(detail::d_rows(detail::pick(forms, c)));
    node.subset = std::move(c);
    nodes.push_back(std::move(node));
  }

  // Locus inclusion is reverse inclusion of closure subsets.
  auto below = [&](const PosetNode& x, const PosetNode& y) {
    // locus(x) strictly contained in locus(y)
    return x.subset != y.subset &&
           std::includes(x.subset.begin(), x.subset.end(), y.subset.begin(),
                         y.subset.end());
  };

  // Longest chain strictly below each node (deepest nodes get rank 0).
  bool changed = true;
  while (changed) {
    changed = false;
    for (PosetNode& y : nodes)
      for (const PosetNode& x : nodes)
        if (below(x, y) && x.rank + 1 > y.rank) {
          y.rank = x.rank + 1;
          changed = true;
        }
  }

  std::sort(nodes.begin(), nodes.end(), [](const PosetNode& l, const PosetNode& r) {
    if (l.rank != r.rank) return l.rank < r.rank;
    return l.subset < r.subset;
  });

  // Cover pairs (deeper id, shallower id).
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (!below(nodes[i], nodes[j])) continue;
      bool covered = true;
      for (std::size_t k = 0; k < nodes.size() && covered; ++k)
        if (k != i && k != j && below(nodes[i], nodes[k]) &&
            below(nodes[k], nodes[j]))
          covered = false;
      if (covered) poset.edges.emplace_back(i, j);
    }
  }
  poset.nodes = std::move(nodes);
  return poset;
}

/// Reads the staged blowup order off the poset: stage r = all rank-r nodes.
/// Requires the arrangement to be simple at the poset's characteristic.
inline BlowupSchedule hu_schedule(const IntersectionPoset& poset) {
  if (!poset.simple)
    throw Error(ErrorKind::NotSimple,
                "blowup schedule requires a simple arrangement");
  BlowupSchedule schedule;
  for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
    std::size_t r = poset.nodes[i].rank;
    if (schedule.stages.size() <= r) schedule.stages.resize(r + 1);
    schedule.stages[r].push_back(i);
  }
  return schedule;
}

} // namespace fanstalk

#endif // FANSTALK_ARRANGEMENT_HPP
