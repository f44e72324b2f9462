// fanstalk: principalization of binomial ideals — refine the system fan so
// every chart totally orders the members' monomial factors by divisibility,
// then stratify the reduced chart preimage as V(N_1) ∪ V(N_2, f_1') ∪ ... ∪
// V(f_1',...,f_a') and verify simple normal position.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_IDEALS_HPP
#define FANSTALK_IDEALS_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fanstalk/transform.hpp"

namespace fanstalk {

/// The system fan refined, per pair of members (i, j), by the sign of
/// h_i - h_j (difference of the members' support functions).  On every
/// maximal cone of the result each member selects one Newton-polyhedron
/// vertex AND the selected monomials are totally ordered by divisibility in
/// every chart.  Equivalently: the common refinement of the system fan with
/// the dual fans of all pairwise two-generator monomial ideals.
inline Fan principalizing_fan(const BinomialSystem& system) {
  if (system.members.empty())
    throw Error(ErrorKind::EmptySystem, "principalizing an empty system");
  std::size_t m = system.order.size();
  Fan fan = system_fan(system);

  std::vector<NewtonPolyhedron> nps;
  for (const Binomial& b : system.members) {
    BinomialSystem single;
    single.order = system.order;
    single.members = {b};
    nps.push_back(newton_polyhedron(single));
  }

  for (std::size_t i = 0; i < nps.size(); ++i) {
    for (std::size_t j = i + 1; j < nps.size(); ++j) {
      std::vector<Cone> pieces;
      for (const Cone& cone : fan.maximal) {
        // The system fan (and every refinement of it) is linear for each
        // member's support function, so the selected vertices are constant
        // on this cone and the difference is a single linear form.
        IntVec d = sub(vertex_for_cone(nps[i], cone),
                       vertex_for_cone(nps[j], cone));
        if (is_zero(d)) {
          pieces.push_back(cone);
          continue;
        }
        bool split = false;
        for (const IntVec& side : {d, negate(d)}) {
          IntMat cut = cone.facets;
          cut.push_back(side);
          Cone piece = cone_from_facets(cut, m);
          if (cone_dimension(piece) == m) {
            pieces.push_back(std::move(piece));
            split = true;
          }
        }
        if (!split) pieces.push_back(cone); // defensive; one side is full
      }
      fan = make_fan(m, std::move(pieces));
    }
  }
  return fan;
}

/// One stratum of the chart decomposition: the vanishing locus of a
/// squarefree monomial (support vector over chart coordinates; empty support
/// for the final stratum) together with the residual factors of the members
/// listed in `residuals` (0-based member indices).  `empty` marks strata that
/// are set-theoretically empty — the monomial is 1 or a listed residual is a
/// nonvanishing unit — which are kept for reporting but excluded from the
/// geometric union.
struct Stratum {
  std::vector<std::size_t> monomial;  // 0-based chart-coordinate indices
  std::vector<std::size_t> residuals; // 0-based member indices
  bool empty = false;
  bool proper_transform = false; // final stratum: all residuals, no monomial
};

/// Per-chart decomposition data: the divisibility order of the members'
/// monomial factors and the resulting stratification.
struct ChartDecomposition {
  Chart chart;
  std::vector<std::size_t> order; // member indices, ascending divisibility
  // Aligned with `order`: squarefree monomial supports on non-invertible
  // chart coordinates (M_1 | M_2 | ... | M_a) and the telescoping quotients
  // N_1 = M_1, N_i = M_i / M_{i-1} (set differences of supports).
  std::vector<std::vector<std::size_t>> m_supports;
  std::vector<std::vector<std::size_t>> n_supports;
  std::vector<Stratum> strata;
};

namespace detail {

/// Support of the monomial factor restricted to non-invertible coordinates:
/// the squarefree reduced monomial of the member in this chart.
inline std::vector<std::size_t> reduced_monomial_support(
    const PulledBinomial& pb, const Chart& chart) {
  std::vector<std::size_t> out;
  for (std::size_t k : support(pb.w))
    if (!chart.is_invertible(k)) out.push_back(k);
  return out;
}

} // namespace detail

/// Orders the members of a chart by divisibility of their reduced monomial
/// factors (support inclusion of the squarefree parts), ties broken by member
/// index.  On a chart of the principalizing fan the order is total by
/// construction; NotTotallyOrdered therefore signals a fan bug.
inline ChartDecomposition chart_order(const Chart& chart,
                                      const std::vector<PulledBinomial>& pulled) {
  if (pulled.empty())
    throw Error(ErrorKind::EmptySystem, "ordering an empty member list");
  ChartDecomposition cd;
  cd.chart = chart;
  std::vector<std::vector<std::size_t>> supports;
  for (const PulledBinomial& pb : pulled)
    supports.push_back(detail::reduced_monomial_support(pb, chart));

  cd.order.resize(pulled.size());
  std::iota(cd.order.begin(), cd.order.end(), std::size_t{0});
  std::stable_sort(cd.order.begin(), cd.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (supports[a].size() != supports[b].size())
                       return supports[a].size() < supports[b].size();
                     return a < b;
                   });
  for (std::size_t i = 0; i + 1 < cd.order.size(); ++i) {
    const auto& lo = supports[cd.order[i]];
    const auto& hi = supports[cd.order[i + 1]];
    if (!std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
      throw Error(ErrorKind::NotTotallyOrdered,
                  "monomial factors of members " +
                      std::to_string(cd.order[i] + 1) + " and " +
                      std::to_string(cd.order[i + 1] + 1) +
                      " are incomparable in this chart");
  }
  for (std::size_t i : cd.order) cd.m_supports.push_back(supports[i]);
  return cd;
}

/// Whether the member's residual factor is a nonvanishing unit in every
/// chart: true for monomial members (residual = unit constant) and for pure
/// members whose two sides collapse to a unit difference.
inline bool residual_is_unit(const PulledBinomial& pb) {
  if (!pb.is_pure()) return true;
  // U = V = 0 cannot happen for honest pure members (M has full row rank),
  // but a nonvanishing 1 - lambda with lambda != 1 would be a unit.
  return is_zero(pb.u) && is_zero(pb.v) && pb.lambda != 1;
}

/// Fills in the telescoping quotients N_i and the stratification
/// V(N_1) ∪ V(N_2, f'_{σ(1)}) ∪ ... ∪ V(f'_{σ(1)},...,f'_{σ(a)});
/// strata whose data forces emptiness (monomial 1, or a unit residual) are
/// flagged.  The final stratum is the proper transform of the two-sided part
/// of the subscheme.
inline ChartDecomposition decompose(const Chart& chart,
                                    const std::vector<PulledBinomial>& pulled) {
  ChartDecomposition cd = chart_order(chart, pulled);
  std::size_t a = cd.order.size();
  for (std::size_t i = 0; i < a; ++i) {
    if (i == 0) {
      cd.n_supports.push_back(cd.m_supports[0]);
      continue;
    }
    std::vector<std::size_t> diff;
    std::set_difference(cd.m_supports[i].begin(), cd.m_supports[i].end(),
                        cd.m_supports[i - 1].begin(), cd.m_supports[i - 1].end(),
                        std::back_inserter(diff));
    cd.n_supports.push_back(std::move(diff));
  }

  for (std::size_t i = 0; i <= a; ++i) {
    Stratum s;
    if (i < a) {
      s.monomial = cd.n_supports[i];
      if (s.monomial.empty()) s.empty = true; // V(1, ...) = empty set
    } else {
      s.proper_transform = true;
    }
    for (std::size_t k = 0; k < (i < a ? i : a); ++k) {
      std::size_t member = cd.order[k];
      s.residuals.push_back(member);
      if (residual_is_unit(pulled[member])) s.empty = true;
    }
    std::sort(s.residuals.begin(), s.residuals.end());
    cd.strata.push_back(std::move(s));
  }
  return cd;
}

/// Report of the simple-normal-position test over the working field.
struct SnpReport {
  bool simple_normal_position = true;
  // (stratum index, member indices) of residual subsets failing the rank test.
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> failures;
};

/// Simple normal position of the decomposition at characteristic p: each
/// nonempty stratum must be a coordinate-subspace configuration.  Monomial
/// parts are squarefree by construction; the residual factors are tested by
/// the subset rank criterion (every lambda-consistent subset of a stratum's
/// residuals needs exponent rows of full rank over the working field).
inline SnpReport simple_normal_position_check(
    const ChartDecomposition& cd, const std::vector<PulledBinomial>& pulled,
    const Int& p) {
  SnpReport report;
  for (std::size_t si = 0; si < cd.strata.size(); ++si) {
    const Stratum& s = cd.strata[si];
    if (s.empty) continue;
    std::vector<TorusForm> residuals;
    std::vector<std::size_t> members;
    for (std::size_t member : s.residuals) {
      PulledBinomial red = reduce_pure(pulled[member], p);
      residuals.push_back({red.torus_exponent(), red.lambda});
      members.push_back(member);
    }
    detail::check_subset_cap(residuals.size());
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
        report.simple_normal_position = false;
        std::vector<std::size_t> failing;
        for (std::size_t j : idx) failing.push_back(members[j]);
        report.failures.emplace_back(si, std::move(failing));
      }
    }
  }
  return report;
}

} // namespace fanstalk

#endif // FANSTALK_IDEALS_HPP
