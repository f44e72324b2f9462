// fanstalk: exact polyhedral geometry — pointed rational cones with dual
// (ray/facet) descriptions, fans subdividing the nonnegative orthant, Newton
// polyhedra of binomial systems and their dual fans.
//
// All cones live inside the nonnegative orthant and are represented by
// primitive integer vectors on both sides of the duality.  Conversions use an
// incremental double-description method with the combinatorial adjacency
// test; every step is exact over Z.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_POLYHEDRA_HPP
#define FANSTALK_POLYHEDRA_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fanstalk/linalg.hpp"
#include "fanstalk/parser.hpp"

namespace fanstalk {

// ---------------------------------------------------------------------------
// Double description core.
// ---------------------------------------------------------------------------

/// Generators of { x : <c, x> >= 0 for all constraints }: extreme rays plus a
/// basis of the lineality space.  For a lower-dimensional *pointed* input the
/// lineality comes back empty and the rays span the cone.
struct GeneratorSet {
  IntMat rays;      // primitive, pairwise non-proportional
  IntMat lineality; // primitive basis vectors (may be empty)
};

namespace detail {

inline bool tight_at(const IntVec& constraint, const IntVec& ray) {
  return dot(constraint, ray) == 0;
}

} // namespace detail

/// Incremental double description: intersect halfspaces one at a time,
/// maintaining extreme rays and lineality.  New rays are built only from
/// adjacent positive/negative pairs; adjacency is the standard combinatorial
/// test on tight sets (no third generator's tight set may contain the
/// intersection).
inline GeneratorSet dual_cone(const IntMat& constraints, std::size_t dim) {
  IntMat lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
  IntMat rays;
  IntMat seen; // constraints processed so far (for tight sets)

  for (const IntVec& c : constraints) {
    if (is_zero(c)) continue;

    // If the constraint cuts the lineality space, one lineality direction
    // becomes a ray and everything else is projected onto the hyperplane.
    std::size_t hit = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (dot(c, lineality[i]) != 0) { hit = i; break; }
    if (hit != lineality.size()) {
      IntVec l0 = lineality[hit];
      if (dot(c, l0) < 0) l0 = negate(l0);
      Int cl0 = dot(c, l0);
      IntMat new_lineality;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == hit) continue;
        IntVec l = sub(scale(cl0, lineality[i]), scale(dot(c, lineality[i]), l0));
        if (!is_zero(l)) new_lineality.push_back(primitive(l));
      }
      IntMat new_rays;
      for (const IntVec& r : rays) {
        IntVec rr = sub(scale(cl0, r), scale(dot(c, r), l0));
        if (!is_zero(rr)) new_rays.push_back(primitive(rr));
      }
      new_rays.push_back(primitive(l0));
      lineality = std::move(new_lineality);
      rays = std::move(new_rays);
      seen.push_back(c);
      continue;
    }

    // Constraint is orthogonal to the lineality: split the rays by sign.
    std::vector<Int> value(rays.size());
    bool any_negative = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      value[i] = dot(c, rays[i]);
      if (value[i] < 0) any_negative = true;
    }
    if (!any_negative) {
      seen.push_back(c);
      continue;
    }

    // Tight sets over the constraints processed so far.
    auto tight_set = [&](const IntVec& r) {
      std::vector<bool> t(seen.size());
      for (std::size_t k = 0; k < seen.size(); ++k) t[k] = detail::tight_at(seen[k], r);
      return t;
    };
    std::vector<std::vector<bool>> tights(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) tights[i] = tight_set(rays[i]);

    auto adjacent = [&](std::size_t p, std::size_t n) {
      std::vector<bool> common(seen.size());
      for (std::size_t k = 0; k < seen.size(); ++k)
        common[k] = tights[p][k] && tights[n][k];
      for (std::size_t j = 0; j < rays.size(); ++j) {
        if (j == p || j == n) continue;
        bool contains = true;
        for (std::size_t k = 0; k < seen.size(); ++k)
          if (common[k] && !tights[j][k]) { contains = false; break; }
        if (contains) return false;
      }
      return true;
    };

    IntMat new_rays;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (value[i] >= 0) new_rays.push_back(rays[i]);
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (value[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (value[n] >= 0) continue;
        if (!adjacent(p, n)) continue;
        // Positive combination landing exactly on the hyperplane of c.
        IntVec w = sub(scale(value[p], rays[n]), scale(value[n], rays[p]));
        new_rays.push_back(primitive(w));
      }
    }
    std::sort(new_rays.begin(), new_rays.end(), lex_less);
    new_rays.erase(std::unique(new_rays.begin(), new_rays.end()), new_rays.end());
    rays = std::move(new_rays);
    seen.push_back(c);
  }

  GeneratorSet g;
  g.rays = std::move(rays);
  g.lineality = std::move(lineality);
  return g;
}

// ---------------------------------------------------------------------------
// Cones.
// ---------------------------------------------------------------------------

/// Pointed rational cone inside the nonnegative orthant, carrying both sides
/// of the double description in canonical form: primitive extreme rays and
/// primitive inner facet normals, each lex-sorted.  For a cone of dimension
/// lower than the ambient space the facet list contains +/- pairs spanning
/// the orthogonal complement, so the inequalities still cut the cone exactly.
struct Cone {
  std::size_t dim = 0; // ambient dimension
  IntMat rays;
  IntMat facets;

  bool contains(const IntVec& x) const {
    for (const IntVec& f : facets)
      if (dot(f, x) < 0) return false;
    return true;
  }

  bool operator==(const Cone& other) const = default;
};

namespace detail {

/// Canonical facet list of cone(rays): extreme rays of the polar plus +/-
/// pairs for the orthogonal complement of the span.
inline IntMat polar_facets(const IntMat& rays, std::size_t dim) {
  GeneratorSet polar = dual_cone(rays, dim);
  IntMat facets = polar.rays;
  for (const IntVec& l : polar.lineality) {
    facets.push_back(l);
    facets.push_back(negate(l));
  }
  std::sort(facets.begin(), facets.end(), lex_less);
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  return facets;
}

inline Cone make_cone_from_rays_unchecked(IntMat rays, std::size_t dim) {
  Cone cone;
  cone.dim = dim;
  cone.facets = polar_facets(rays, dim);
  // Re-extract the rays from the facets so redundant input generators drop
  // out and both descriptions are canonical.
  GeneratorSet g = dual_cone(cone.facets, dim);
  if (!g.lineality.empty())
    throw Error(ErrorKind::NotPointed, "cone contains a line");
  cone.rays = std::move(g.rays);
  std::sort(cone.rays.begin(), cone.rays.end(), lex_less);
  return cone;
}

} // namespace detail

/// Builds the canonical cone generated by the given rays.  The rays must be
/// nonzero and nonnegative (cones of this library live in the orthant, which
/// also guarantees pointedness).
inline Cone cone_from_rays(const IntMat& rays, std::size_t dim) {
  IntMat prim;
  for (const IntVec& r : rays) {
    if (r.size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "ray of wrong dimension");
    if (is_zero(r)) throw Error(ErrorKind::ZeroVector, "zero vector is not a ray");
    if (!all_nonnegative(r))
      throw Error(ErrorKind::OutsideOrthant,
                  "ray with negative entry is outside the nonnegative orthant");
    prim.push_back(primitive(r));
  }
  return detail::make_cone_from_rays_unchecked(std::move(prim), dim);
}

/// Builds the canonical cone cut out by inner normals.  Fails with NotPointed
/// if the inequalities leave a line, and with OutsideOrthant if some extreme
/// ray leaves the nonnegative orthant.
inline Cone cone_from_facets(const IntMat& facets, std::size_t dim) {
  for (const IntVec& f : facets)
    if (f.size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "facet normal of wrong dimension");
  GeneratorSet g = dual_cone(facets, dim);
  if (!g.lineality.empty())
    throw Error(ErrorKind::NotPointed, "inequalities leave a lineality space");
  for (const IntVec& r : g.rays)
    if (!all_nonnegative(r))
      throw Error(ErrorKind::OutsideOrthant,
                  "inequalities admit a ray outside the nonnegative orthant");
  return detail::make_cone_from_rays_unchecked(std::move(g.rays), dim);
}

inline std::size_t cone_dimension(const Cone& cone) {
  return rank_rational(cone.rays);
}

/// The full nonnegative orthant as a (self-dual) cone.
inline Cone orthant_cone(std::size_t dim) {
  IntMat units;
  for (std::size_t i = 0; i < dim; ++i) units.push_back(unit_vector(dim, i));
  Cone cone;
  cone.dim = dim;
  cone.rays = units;
  cone.facets = units;
  return cone;
}

// ---------------------------------------------------------------------------
// Fans.
// ---------------------------------------------------------------------------

/// Fan given by its maximal cones.  Rays are deduplicated across the fan,
/// lex-sorted, and each maximal cone also stores the (sorted) indices of its
/// rays.  Optional `vertices` aligns with `maximal` and records the Newton
/// polyhedron vertex selected by each maximal cone (dual fans only).
struct Fan {
  std::size_t dim = 0;
  IntMat rays;
  std::vector<Cone> maximal;
  std::vector<std::vector<std::size_t>> cone_rays; // 0-based indices into rays
  IntMat vertices;                                 // aligned with maximal; may be empty

  bool operator==(const Fan& other) const {
    return dim == other.dim && rays == other.rays && cone_rays == other.cone_rays;
  }
};

/// Assembles the canonical fan from maximal cones (and optional aligned
/// vertex markers).  Cones are sorted by their ray-index sets.
inline Fan make_fan(std::size_t dim, std::vector<Cone> cones, IntMat vertices = {}) {
  Fan fan;
  fan.dim = dim;
  for (const Cone& c : cones)
    for (const IntVec& r : c.rays) fan.rays.push_back(r);
  std::sort(fan.rays.begin(), fan.rays.end(), lex_less);
  fan.rays.erase(std::unique(fan.rays.begin(), fan.rays.end()), fan.rays.end());

  auto ray_index = [&](const IntVec& r) {
    auto it = std::lower_bound(fan.rays.begin(), fan.rays.end(), r, lex_less);
    return static_cast<std::size_t>(it - fan.rays.begin());
  };

  std::vector<std::size_t> order(cones.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::vector<std::size_t>> indices(cones.size());
  for (std::size_t i = 0; i < cones.size(); ++i) {
    for (const IntVec& r : cones[i].rays) indices[i].push_back(ray_index(r));
    std::sort(indices[i].begin(), indices[i].end());
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return indices[a] < indices[b];
  });
  for (std::size_t i : order) {
    if (!fan.cone_rays.empty() && fan.cone_rays.back() == indices[i]) continue;
    fan.maximal.push_back(cones[i]);
    fan.cone_rays.push_back(indices[i]);
    if (!vertices.empty()) fan.vertices.push_back(vertices[i]);
  }
  return fan;
}

/// The trivial fan: one maximal cone, the whole orthant.
inline Fan orthant_fan(std::size_t dim) {
  return make_fan(dim, {orthant_cone(dim)});
}

// ---------------------------------------------------------------------------
// Newton polyhedra and tropical forms.
// ---------------------------------------------------------------------------

/// Newton polyhedron of a product of binomials: the convex hull of the listed
/// vertices plus the nonnegative orthant as recession cone.  Only extremal
/// points are stored.
struct NewtonPolyhedron {
  std::size_t dim = 0;
  IntMat vertices; // lex-sorted, extremal

  bool operator==(const NewtonPolyhedron& other) const = default;
};

/// Signed exponent gap of a binomial: D = A - B (zero for monomials).  The
/// kink locus of min(<C+A, .>, <C+B, .>) is the hyperplane D-perp, so D is
/// all the dual fan construction needs.
struct TropicalForm {
  IntVec coeffs;
};

inline TropicalForm tropical_form(const Binomial& b) {
  if (b.kind == BinomialKind::Monomial) return {IntVec(b.order.size(), Int(0))};
  return {sub(b.a, b.b)};
}

/// Splits every maximal cone along the hyperplane of the tropical form,
/// keeping the full-dimensional halves.  A zero form (monomial) changes
/// nothing.
inline Fan subdivide_by_tropical(const Fan& fan, const TropicalForm& t) {
  if (t.coeffs.size() != fan.dim)
    throw Error(ErrorKind::DimensionMismatch, "tropical form of wrong dimension");
  if (is_zero(t.coeffs)) return fan;
  std::vector<Cone> pieces;
  for (const Cone& cone : fan.maximal) {
    bool split = false;
    for (const IntVec& side : {t.coeffs, negate(t.coeffs)}) {
      IntMat cut = cone.facets;
      cut.push_back(side);
      Cone piece = cone_from_facets(cut, fan.dim);
      if (cone_dimension(piece) == fan.dim) {
        pieces.push_back(std::move(piece));
        split = true;
      }
    }
    if (!split) pieces.push_back(cone); // defensive; at least one side is full
  }
  return make_fan(fan.dim, std::move(pieces));
}

/// Dual fan of the system: the orthant subdivided by every member's tropical
/// form in turn.  This equals the normal fan of the Newton polyhedron of the
/// product (no vertex markers attached here).
inline Fan system_fan(const BinomialSystem& system) {
  Fan fan = orthant_fan(system.order.size());
  for (const Binomial& b : system.members) fan = subdivide_by_tropical(fan, tropical_form(b));
  return fan;
}

namespace detail {

/// Exponent point of the member selected by a weight in the interior of a
/// maximal cone (the end of the binomial whose value is smaller there).
inline IntVec member_vertex_at(const Binomial& b, const IntVec& weight) {
  if (b.kind == BinomialKind::Monomial) return b.c;
  Int gap = dot(sub(b.a, b.b), weight);
  return gap <= 0 ? add(b.c, b.a) : add(b.c, b.b);
}

} // namespace detail

/// Newton polyhedron of the product of the members, computed through the
/// dual fan: each maximal cone selects one exponent point per member and
/// their sum is a vertex of the Minkowski sum.
inline NewtonPolyhedron newton_polyhedron(const BinomialSystem& system) {
  std::size_t m = system.order.size();
  Fan fan = system_fan(system);
  NewtonPolyhedron np;
  np.dim = m;
  for (const auto& cone : fan.maximal) {
    IntVec weight(m, Int(0));
    for (const IntVec& r : cone.rays) weight = add(weight, r);
    IntVec v(m, Int(0));
    for (const Binomial& b : system.members)
      v = add(v, detail::member_vertex_at(b, weight));
    np.vertices.push_back(std::move(v));
  }
  std::sort(np.vertices.begin(), np.vertices.end(), lex_less);
  np.vertices.erase(std::unique(np.vertices.begin(), np.vertices.end()),
                    np.vertices.end());
  return np;
}

/// Normal fan of a Newton polyhedron, built vertex by vertex: the cone of a
/// vertex v is cut out by the difference normals w - v and the coordinate
/// halfspaces.  Vertex markers are attached to the maximal cones.
inline Fan dual_fan(const NewtonPolyhedron& np) {
  std::size_t m = np.dim;
  std::vector<Cone> cones;
  IntMat vertices;
  for (const IntVec& v : np.vertices) {
    IntMat constraints;
    for (const IntVec& w : np.vertices)
      if (w != v) constraints.push_back(sub(w, v));
    for (std::size_t k = 0; k < m; ++k) constraints.push_back(unit_vector(m, k));
    Cone cone = cone_from_facets(constraints, m);
    if (cone_dimension(cone) != m)
      throw Error(ErrorKind::AmbiguousVertex,
                  "non-extremal vertex in Newton polyhedron");
    cones.push_back(std::move(cone));
    vertices.push_back(v);
  }
  return make_fan(m, std::move(cones), std::move(vertices));
}

/// The unique vertex minimized over a maximal cone of the dual fan.  The
/// probe weight is the sum of the cone's rays, an interior point.
inline IntVec vertex_for_cone(const NewtonPolyhedron& np, const Cone& cone) {
  if (cone_dimension(cone) != np.dim)
    throw Error(ErrorKind::NotMaximal, "cone is not full-dimensional");
  IntVec weight(np.dim, Int(0));
  for (const IntVec& r : cone.rays) weight = add(weight, r);
  const IntVec* best = nullptr;
  Int best_value = 0;
  bool tie = false;
  for (const IntVec& v : np.vertices) {
    Int value = dot(weight, v);
    if (!best || value < best_value) {
      best = &v;
      best_value = value;
      tie = false;
    } else if (value == best_value) {
      tie = true;
    }
  }
  if (!best) throw Error(ErrorKind::AmbiguousVertex, "polyhedron has no vertices");
  if (tie)
    throw Error(ErrorKind::AmbiguousVertex,
                "several vertices minimize over the cone");
  return *best;
}

/// Star subdivision at a ray: every maximal cone containing the ray is
/// replaced by the joins of the ray with the cone's facets that miss it.
/// Star subdivision at an existing ray of a simplicial cone is the identity.
inline Fan star_subdivide(const Fan& fan, const IntVec& ray_in) {
  if (ray_in.size() != fan.dim)
    throw Error(ErrorKind::DimensionMismatch, "ray of wrong dimension");
  if (is_zero(ray_in)) throw Error(ErrorKind::ZeroVector, "cannot star at zero");
  IntVec ray = primitive(ray_in);

  bool inside = false;
  std::vector<Cone> pieces;
  for (const Cone& cone : fan.maximal) {
    if (!cone.contains(ray)) {
      pieces.push_back(cone);
      continue;
    }
    inside = true;
    for (const IntVec& f : cone.facets) {
      if (dot(f, ray) == 0) continue; // facet contains the ray; not a base
      IntMat gens;
      for (const IntVec& r : cone.rays)
        if (dot(f, r) == 0) gens.push_back(r);
      gens.push_back(ray);
      pieces.push_back(cone_from_rays(gens, fan.dim));
    }
  }
  if (!inside)
    throw Error(ErrorKind::RayOutsideSupport,
                "ray lies outside the support of the fan");
  return make_fan(fan.dim, std::move(pieces));
}

/// Star subdivision at every ray the fan currently has (in lex order).  The
/// result is simplicial with the same ray set.
inline Fan star_subdivide_all_rays(const Fan& fan) {
  Fan out = fan;
  for (const IntVec& r : fan.rays) out = star_subdivide(out, r);
  return out;
}

} // namespace fanstalk

#endif // FANSTALK_POLYHEDRA_HPP
