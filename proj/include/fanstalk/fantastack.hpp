// fanstalk: stacky-fan data — the matrix M of primitive ray generators with
// identity block first, the chart cover indexed by maximal cones, the kernel
// lattice of M (torus-action weights), the closed-form matrix of a single
// pure binomial, and the lifted coordinate fan.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_FANTASTACK_HPP
#define FANSTALK_FANTASTACK_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fanstalk/polyhedra.hpp"

namespace fanstalk {

// ---------------------------------------------------------------------------
// Stacky fan.
// ---------------------------------------------------------------------------

/// Fan on Z^m together with the m-by-n matrix M whose columns are the
/// primitive ray generators: columns 1..m form the identity block and the
/// remaining columns are sorted colexicographically.  Chart coordinates are
/// named after the columns: primed original variables for the identity block,
/// z_1, z_2, ... for the rest.
struct StackyFan {
  Fan fan;
  IntMat columns;                  // n columns, each of length m
  std::vector<std::string> names;  // coordinate name per column

  std::size_t m() const { return fan.dim; }
  std::size_t n() const { return columns.size(); }

  /// M as a list of m rows of length n.
  IntMat rows() const {
    IntMat r(m(), IntVec(n(), Int(0)));
    for (std::size_t j = 0; j < n(); ++j)
      for (std::size_t i = 0; i < m(); ++i) r[i][j] = columns[j][i];
    return r;
  }

  /// M^T x: the pullback exponents of the monomial x on chart coordinates.
  IntVec transpose_apply(const IntVec& x) const {
    IntVec out(n());
    for (std::size_t j = 0; j < n(); ++j) out[j] = dot(columns[j], x);
    return out;
  }

  /// Column index of a ray vector (columns are exactly the fan's rays).
  std::size_t column_of(const IntVec& ray) const {
    for (std::size_t j = 0; j < n(); ++j)
      if (columns[j] == ray) return j;
    throw Error(ErrorKind::RayOutsideSupport, "vector is not a column of M");
  }
};

/// One affine chart per maximal cone: the coordinates whose columns lie
/// outside the cone are invertible there.
struct Chart {
  std::size_t cone_index = 0;               // index into fan.maximal
  std::vector<std::size_t> cone_columns;    // 0-based columns of the cone's rays
  std::vector<std::size_t> invertible;      // 0-based complementary columns

  bool is_invertible(std::size_t column) const {
    return std::binary_search(invertible.begin(), invertible.end(), column);
  }
};

/// Canonical basis of the saturated integer kernel of M (the weight lattice
/// of the quotient group action).
struct KernelLattice {
  IntMat basis; // rows of length n, Hermite-canonical
};

namespace detail {

inline std::vector<std::string> column_names(const VariableOrder& order,
                                             std::size_t n) {
  std::vector<std::string> names;
  for (const std::string& v : order.names) names.push_back(v + "'");
  for (std::size_t k = names.size(); k < n; ++k)
    names.push_back("z" + std::to_string(k - order.names.size() + 1));
  return names;
}

} // namespace detail

/// Assembles the stacky-fan matrix from a fan: identity block first, the
/// remaining primitive rays in colex order.  The fan must contain every unit
/// vector among its rays and M must have full rank m.
inline StackyFan build_stacky_fan(const Fan& fan, const VariableOrder& order) {
  std::size_t m = fan.dim;
  if (order.size() != m)
    throw Error(ErrorKind::DimensionMismatch,
                "variable order does not match fan dimension");
  StackyFan sf;
  sf.fan = fan;
  IntMat rest;
  for (std::size_t i = 0; i < m; ++i) {
    IntVec e = unit_vector(m, i);
    if (!std::binary_search(fan.rays.begin(), fan.rays.end(), e, lex_less))
      throw Error(ErrorKind::MissingUnitRay,
                  "fan lacks the coordinate ray e_" + std::to_string(i + 1));
    sf.columns.push_back(std::move(e));
  }
  for (const IntVec& r : fan.rays) {
    bool is_unit = false;
    for (std::size_t i = 0; i < m && !is_unit; ++i)
      is_unit = (r == unit_vector(m, i));
    if (!is_unit) rest.push_back(r);
  }
  std::sort(rest.begin(), rest.end(), colex_less);
  for (IntVec& r : rest) sf.columns.push_back(std::move(r));
  if (rank_rational(sf.columns) != m)
    throw Error(ErrorKind::RankDeficient, "ray matrix does not have rank m");
  sf.names = detail::column_names(order, sf.columns.size());
  return sf;
}

/// One chart per maximal cone, listing the cone's columns and the invertible
/// complement, in the fan's canonical cone order.
inline std::vector<Chart> charts(const StackyFan& sf) {
  std::vector<Chart> out;
  for (std::size_t c = 0; c < sf.fan.maximal.size(); ++c) {
    Chart chart;
    chart.cone_index = c;
    for (const IntVec& r : sf.fan.maximal[c].rays)
      chart.cone_columns.push_back(sf.column_of(r));
    std::sort(chart.cone_columns.begin(), chart.cone_columns.end());
    for (std::size_t j = 0; j < sf.n(); ++j)
      if (!std::binary_search(chart.cone_columns.begin(),
                              chart.cone_columns.end(), j))
        chart.invertible.push_back(j);
    out.push_back(std::move(chart));
  }
  return out;
}

/// Canonical basis of ker(M) over the integers (saturated, rank n - m).
inline KernelLattice kernel_lattice(const StackyFan& sf) {
  KernelLattice k;
  k.basis = integer_kernel_basis(sf.rows(), sf.n());
  return k;
}

/// Closed-form stacky matrix of a single pure two-sided binomial: identity
/// block plus, for every i in supp(A) and j in supp(B), the primitive column
/// (B_j e_i + A_i e_j) / gcd(A_i, B_j).  The column set provably equals the
/// ray set of the dual fan of the Newton polyhedron; the attached fan is the
/// engine-computed one so the object is a complete stacky fan.
inline StackyFan closed_form_matrix(const Binomial& b) {
  if (b.kind != BinomialKind::Pure)
    throw Error(ErrorKind::NotPure, "closed form requires a pure binomial");
  std::size_t m = b.order.size();
  std::vector<std::size_t> sa = support(b.a);
  std::vector<std::size_t> sb = support(b.b);
  if (sa.empty() || sb.empty())
    throw Error(ErrorKind::OneSidedBinomial,
                "closed form requires both sides of the binomial nonempty");

  StackyFan sf;
  for (std::size_t i = 0; i < m; ++i) sf.columns.push_back(unit_vector(m, i));
  IntMat rest;
  for (std::size_t i : sa) {
    for (std::size_t j : sb) {
      Int d = igcd(b.a[i], b.b[j]);
      IntVec col(m, Int(0));
      col[i] = b.b[j] / d;
      col[j] = b.a[i] / d;
      rest.push_back(std::move(col));
    }
  }
  std::sort(rest.begin(), rest.end(), colex_less);
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  for (IntVec& r : rest) sf.columns.push_back(std::move(r));

  BinomialSystem single{b.order, {b}};
  sf.fan = system_fan(single);
  sf.names = detail::column_names(b.order, sf.columns.size());
  return sf;
}

/// Lifted fan on Z^n: each maximal cone sigma lifts to the coordinate cone on
/// the unit vectors of sigma's columns.  The lifted cones are faces of the
/// orthant of Z^n and need not cover it.
inline Fan lift_fan(const StackyFan& sf) {
  std::size_t n = sf.n();
  std::vector<Cone> cones;
  for (const Chart& chart : charts(sf)) {
    IntMat gens;
    for (std::size_t j : chart.cone_columns) gens.push_back(unit_vector(n, j));
    cones.push_back(cone_from_rays(gens, n));
  }
  return make_fan(n, std::move(cones));
}

} // namespace fanstalk

#endif // FANSTALK_FANTASTACK_HPP
