// fanstalk: independent brute-force verifiers — exact rational linear
// programming for Minkowski vertex enumeration, facet certification by rank,
// finite-field smoothness scans of chart equations, and sampled/exact fan
// validity checks.  These deliberately avoid the engine's algorithms so the
// two can cross-check each other.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_ORACLE_HPP
#define FANSTALK_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fanstalk/ideals.hpp"
#include "fanstalk/transform.hpp"

namespace fanstalk {

namespace detail {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// Whether {x >= 0 : A x = b} is nonempty, by phase-1 simplex with Bland's
/// rule (exact rationals, guaranteed termination).
inline bool lp_feasible(RatMat a, RatVec b) {
  std::size_t rows = a.size();
  if (rows == 0) return true;
  std::size_t cols = a[0].size();
  for (std::size_t i = 0; i < rows; ++i)
    if (b[i] < 0) {
      for (Rat& x : a[i]) x = -x;
      b[i] = -b[i];
    }
  // Tableau [A | I | b] with artificial basis; minimize the artificial sum.
  std::size_t total = cols + rows;
  RatMat t(rows, RatVec(total + 1, Rat(0)));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = a[i][j];
    t[i][cols + i] = 1;
    t[i][total] = b[i];
    basis[i] = cols + i;
  }
  // Reduced costs for the artificial objective: r_j = -sum_i t[i][j] on
  // non-artificial columns; artificial columns start at 0.
  RatVec r(total, Rat(0));
  Rat value = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) r[j] -= t[i][j];
    value += t[i][total];
  }
  for (;;) {
    // Bland: entering column = smallest index with negative reduced cost.
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j)
      if (r[j] < 0) {
        enter = j;
        break;
      }
    if (enter == total) break; // optimal
    // Ratio test; Bland tie-break by smallest basis variable index.
    std::size_t leave = rows;
    Rat best = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][total] / t[i][enter];
      if (leave == rows || ratio < best ||
          (ratio == best && basis[i] < basis[leave]))
        leave = i, best = ratio;
    }
    if (leave == rows) break; // unbounded below cannot happen (objective >= 0)
    // Pivot.
    Rat pivot = t[leave][enter];
    for (Rat& x : t[leave]) x /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat factor = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= factor * t[leave][j];
    }
    Rat rf = r[enter];
    for (std::size_t j = 0; j < total; ++j) r[j] -= rf * t[leave][j];
    value += rf * t[leave][total];
    basis[leave] = enter;
  }
  return value == 0;
}

/// Exponent points of one member: the single point of a monomial, the two
/// term points of a pure binomial.
inline IntMat member_points(const Binomial& b) {
  if (b.kind == BinomialKind::Monomial) return {b.c};
  return {add(b.c, b.a), add(b.c, b.b)};
}

} // namespace detail

/// All vertices of the Newton polyhedron of the member product, by brute
/// force: enumerate every a-fold sum of per-member exponent points, then keep
/// the sums not expressible as (convex combination of the other sums) plus a
/// nonnegative vector — an exact rational LP per candidate.
inline IntMat minkowski_vertices_bruteforce(const BinomialSystem& system) {
  if (system.members.empty())
    throw Error(ErrorKind::EmptySystem, "no members to sum");
  if (system.members.size() > 8)
    throw Error(ErrorKind::TooManyMembers,
                "brute-force enumeration is capped at 8 members");
  std::size_t m = system.order.size();
  IntMat sums = {IntVec(m, Int(0))};
  for (const Binomial& b : system.members) {
    IntMat next;
    for (const IntVec& s : sums)
      for (const IntVec& p : detail::member_points(b)) next.push_back(add(s, p));
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end(), lex_less);
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());

  IntMat vertices;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    // Feasibility of: mu >= 0 over the other sums, slack s >= 0,
    // sum mu_w w + s = v, sum mu_w = 1  — feasible means v is dominated.
    std::size_t others = sums.size() - 1;
    detail::RatMat a(m + 1, detail::RatVec(others + m, Rat(0)));
    detail::RatVec b(m + 1, Rat(0));
    std::size_t col = 0;
    for (std::size_t w = 0; w < sums.size(); ++w) {
      if (w == c) continue;
      for (std::size_t i = 0; i < m; ++i) a[i][col] = Rat(sums[w][i]);
      a[m][col] = 1;
      ++col;
    }
    for (std::size_t i = 0; i < m; ++i) a[i][others + i] = 1;
    for (std::size_t i = 0; i < m; ++i) b[i] = Rat(sums[c][i]);
    b[m] = 1;
    if (!detail::lp_feasible(std::move(a), std::move(b)))
      vertices.push_back(sums[c]);
  }
  return vertices;
}

/// Whether the face of the Newton polyhedron minimized by v (nonnegative,
/// nonzero) is a facet: affine dimension m - 1, computed as the rank of the
/// minimizing vertices' differences together with the unbounded directions
/// e_k for v_k = 0.
inline bool certify_facet(const NewtonPolyhedron& np, const IntVec& v) {
  if (v.size() != np.dim)
    throw Error(ErrorKind::DimensionMismatch, "direction of wrong dimension");
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "zero direction");
  IntVec values;
  for (const IntVec& w : np.vertices) values.push_back(dot(v, w));
  Int best = values[0];
  for (const Int& x : values) best = std::min(best, x);
  IntMat span_rows;
  const IntVec* base = nullptr;
  for (std::size_t i = 0; i < np.vertices.size(); ++i) {
    if (values[i] != best) continue;
    if (!base) {
      base = &np.vertices[i];
      continue;
    }
    span_rows.push_back(sub(np.vertices[i], *base));
  }
  for (std::size_t k = 0; k < np.dim; ++k)
    if (v[k] == 0) span_rows.push_back(unit_vector(np.dim, k));
  return rank_rational(span_rows) == np.dim - 1;
}

// ---------------------------------------------------------------------------
// Finite-field smoothness scan.
// ---------------------------------------------------------------------------

namespace detail {

inline long long modpow_table_entry(long long base, const Int& exp, long long q) {
  if (exp == 0) return 1;
  if (base == 0) return 0;
  long long r = 1, b = base % q;
  for (std::size_t bit = boost::multiprecision::msb(exp) + 1; bit-- > 0;) {
    r = r * r % q;
    if (boost::multiprecision::bit_test(exp, bit)) r = r * b % q;
  }
  return r;
}

/// Thread budget: FANSTALK_THREADS if set, else hardware concurrency.
inline std::size_t thread_budget() {
  if (const char* env = std::getenv("FANSTALK_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

} // namespace detail

/// Exhaustive smoothness check of the given residual factors over F_q (q the
/// working characteristic): enumerate every point of the chart's coordinate
/// space with invertible coordinates nonzero; at each common zero of a subset
/// Z of the factors, the factors' exponent rows D_Z must keep their rational
/// rank modulo q (logarithmic Jacobian criterion — valid because a vanishing
/// schön factor forces all coordinates in its support to be units at the
/// point).  Returns all violating points in lexicographic order (expected
/// empty when q is not problematic).  Equations are taken as given: pass
/// reduced factors to test the reduction claim, unreduced ones to observe the
/// failure.
inline IntMat smoothness_scan(const std::vector<PulledBinomial>& pbs,
                              const Chart& chart, const Int& q) {
  if (!is_prime(q))
    throw Error(ErrorKind::BadCharacteristic, "scan field must be prime");
  if (q > 13)
    throw Error(ErrorKind::FieldTooLarge, "scan fields are capped at q = 13");

  std::vector<const PulledBinomial*> pure;
  for (const PulledBinomial& pb : pbs)
    if (pb.is_pure()) pure.push_back(&pb);
  if (pure.empty()) return {};
  std::size_t n = pure[0]->w.size();
  if (n == 0) return {};
  detail::check_subset_cap(pure.size());

  Int budget = 1;
  for (std::size_t k = 0; k < n; ++k) {
    budget *= q;
    if (budget > 10'000'000)
      throw Error(ErrorKind::TooManyCoordinates,
                  "scan budget q^n exceeds 10^7");
  }

  long long qq = static_cast<long long>(q);
  std::size_t a = pure.size();

  // lambda images; a non-unit lambda cannot be reduced into F_q.
  std::vector<long long> lam(a);
  for (std::size_t j = 0; j < a; ++j) {
    if (padic_valuation(pure[j]->lambda, q) != 0)
      throw Error(ErrorKind::BadCharacteristic,
                  "lambda of member " + std::to_string(pure[j]->source + 1) +
                      " is not a unit at this characteristic");
    lam[j] = static_cast<long long>(mod_p(pure[j]->lambda, q));
  }

  // Per-member, per-coordinate power tables for both sides.
  auto tables = [&](auto side) {
    std::vector<std::vector<std::array<long long, 13>>> t(
        a, std::vector<std::array<long long, 13>>(n));
    for (std::size_t j = 0; j < a; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (long long x = 0; x < qq; ++x)
          t[j][k][static_cast<std::size_t>(x)] =
              detail::modpow_table_entry(x, side(*pure[j])[k], qq);
    return t;
  };
  auto pow_u = tables([](const PulledBinomial& pb) -> const IntVec& { return pb.u; });
  auto pow_v = tables([](const PulledBinomial& pb) -> const IntVec& { return pb.v; });

  // Precompute the singularity verdict of every vanishing pattern: rank of
  // the rows D_Z modulo q versus over Q.
  std::vector<char> singular_mask(std::size_t{1} << a, 0);
  for (std::size_t mask = 1; mask < singular_mask.size(); ++mask) {
    IntMat rows;
    for (std::size_t j = 0; j < a; ++j)
      if (mask & (std::size_t{1} << j)) rows.push_back(pure[j]->torus_exponent());
    singular_mask[mask] = rank_mod_p(rows, q) < rank_rational(rows) ? 1 : 0;
  }

  // Allowed residues per coordinate (invertible ones exclude 0).
  std::vector<std::vector<long long>> allowed(n);
  for (std::size_t k = 0; k < n; ++k)
    for (long long x = chart.is_invertible(k) ? 1 : 0; x < qq; ++x)
      allowed[k].push_back(x);

  auto scan_block = [&](std::size_t first_lo, std::size_t first_hi,
                        IntMat& out) {
    std::vector<long long> point(n, 0);
    std::vector<std::size_t> digit(n, 0);
    for (std::size_t f = first_lo; f < first_hi; ++f) {
      point[0] = allowed[0][f];
      // Odometer over coordinates 1..n-1 (coordinate 0 fixed).
      for (std::size_t k = 1; k < n; ++k) {
        digit[k] = 0;
        point[k] = allowed[k][0];
      }
      for (;;) {
        std::size_t mask = 0;
        for (std::size_t j = 0; j < a; ++j) {
          long long xu = 1, xv = 1;
          for (std::size_t k = 0; k < n; ++k) {
            xu = xu * pow_u[j][k][static_cast<std::size_t>(point[k])] % qq;
            xv = xv * pow_v[j][k][static_cast<std::size_t>(point[k])] % qq;
          }
          if ((xu + qq - lam[j] * xv % qq) % qq == 0)
            mask |= std::size_t{1} << j;
        }
        if (mask != 0 && singular_mask[mask]) {
          IntVec p(n);
          for (std::size_t k = 0; k < n; ++k) p[k] = Int(point[k]);
          out.push_back(std::move(p));
        }
        // Advance the odometer.
        std::size_t k = n;
        while (k-- > 1) {
          if (++digit[k] < allowed[k].size()) {
            point[k] = allowed[k][digit[k]];
            break;
          }
          digit[k] = 0;
          point[k] = allowed[k][0];
        }
        if (k == 0) break;
      }
    }
  };

  std::size_t first_count = allowed[0].size();
  std::size_t want = std::min(detail::thread_budget(), first_count);
  if (want <= 1) {
    IntMat out;
    scan_block(0, first_count, out);
    return out;
  }
  std::vector<IntMat> results(want);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < want; ++t) {
    std::size_t lo = first_count * t / want;
    std::size_t hi = first_count * (t + 1) / want;
    workers.emplace_back([&, t, lo, hi] { scan_block(lo, hi, results[t]); });
  }
  for (std::thread& w : workers) w.join();
  IntMat out;
  for (IntMat& r : results)
    for (IntVec& p : r) out.push_back(std::move(p));
  return out; // block order over coordinate 0 == lexicographic order
}

// ---------------------------------------------------------------------------
// Fan validity oracles.
// ---------------------------------------------------------------------------

/// Exact pairwise check of the fan axiom: the intersection of any two maximal
/// cones must be a face of each.  The intersection is computed from the
/// joined facet systems; the smallest face of a cone containing it is spanned
/// by the cone's rays tight on every facet normal that vanishes on the
/// intersection.  Returns the indices of the first failing pair, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> fan_face_violation(
    const Fan& fan) {
  auto face_rays = [&](const Cone& cone, const Cone& meet) {
    // Facet normals of `cone` vanishing on all of `meet`.
    IntMat tight_normals;
    for (const IntVec& f : cone.facets) {
      bool tight = true;
      for (const IntVec& r : meet.rays)
        if (dot(f, r) != 0) tight = false;
      if (tight) tight_normals.push_back(f);
    }
    IntMat rays;
    for (const IntVec& r : cone.rays) {
      bool in_face = true;
      for (const IntVec& f : tight_normals)
        if (dot(f, r) != 0) in_face = false;
      if (in_face) rays.push_back(r);
    }
    return rays;
  };
  for (std::size_t i = 0; i < fan.maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < fan.maximal.size(); ++j) {
      IntMat joined = fan.maximal[i].facets;
      for (const IntVec& f : fan.maximal[j].facets) joined.push_back(f);
      GeneratorSet meet_gen = dual_cone(joined, fan.dim);
      if (!meet_gen.lineality.empty()) return std::make_pair(i, j);
      Cone meet;
      meet.dim = fan.dim;
      meet.rays = meet_gen.rays;
      std::sort(meet.rays.begin(), meet.rays.end(), lex_less);
      for (std::size_t side = 0; side < 2; ++side) {
        IntMat expect = face_rays(fan.maximal[side == 0 ? i : j], meet);
        std::sort(expect.begin(), expect.end(), lex_less);
        if (expect != meet.rays) return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

/// Sampled coverage check: deterministic pseudo-random nonnegative integer
/// points must all lie in some maximal cone.  Returns the first uncovered
/// point, if any.
inline std::optional<IntVec> fan_coverage_gap(const Fan& fan,
                                              std::size_t trials = 1000,
                                              std::uint64_t seed = 20260818) {
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    IntVec x(fan.dim);
    for (std::size_t k = 0; k < fan.dim; ++k)
      x[k] = Int(rng() % 1000);
    bool covered = false;
    for (const Cone& c : fan.maximal)
      if (c.contains(x)) {
        covered = true;
        break;
      }
    if (!covered) return x;
  }
  return std::nullopt;
}

/// Pointwise cross-check over F_q that the union of a chart decomposition's
/// nonempty strata equals the zero set of the pulled-back members there
/// (invertible coordinates range over nonzero residues).  Set-theoretic
/// equality is insensitive to reduction, so the members are evaluated as
/// given.  Returns the first disagreeing point, if any.  Requires q prime
/// and <= 13, every unit and lambda a q-unit, and q^n within the same budget
/// as smoothness_scan.
inline std::optional<IntVec> strata_cover_gap(
    const ChartDecomposition& cd, const std::vector<PulledBinomial>& pulled,
    const Int& q) {
  if (!is_prime(q))
    throw Error(ErrorKind::BadCharacteristic, "scan field must be prime");
  if (q > 13)
    throw Error(ErrorKind::FieldTooLarge, "scan fields are capped at q = 13");
  if (pulled.empty()) throw Error(ErrorKind::EmptySystem, "no members");

  std::size_t n = pulled[0].w.size();
  Int budget = 1;
  for (std::size_t k = 0; k < n; ++k) {
    budget *= q;
    if (budget > 10'000'000)
      throw Error(ErrorKind::TooManyCoordinates,
                  "scan budget q^n exceeds 10^7");
  }

  long long qq = static_cast<long long>(q);
  std::size_t a = pulled.size();
  std::vector<long long> lam(a), unit(a);
  for (std::size_t j = 0; j < a; ++j) {
    if (padic_valuation(pulled[j].unit, q) != 0 ||
        (pulled[j].is_pure() && padic_valuation(pulled[j].lambda, q) != 0))
      throw Error(ErrorKind::BadCharacteristic,
                  "coefficient of member " + std::to_string(j + 1) +
                      " is not a unit at this characteristic");
    unit[j] = static_cast<long long>(mod_p(pulled[j].unit, q));
    lam[j] = pulled[j].is_pure()
                 ? static_cast<long long>(mod_p(pulled[j].lambda, q))
                 : 0;
  }

  auto eval_mono = [&](const IntVec& e, const std::vector<long long>& x) {
    long long r = 1;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      r = r * detail::modpow_table_entry(x[k], e[k], qq) % qq;
    }
    return r;
  };
  // Residual torus factor x^U - lambda x^V of a pure member; monomial
  // members have unit residual, which never vanishes.
  auto residual_vanishes = [&](std::size_t j, const std::vector<long long>& x) {
    if (!pulled[j].is_pure()) return false;
    long long xu = eval_mono(pulled[j].u, x), xv = eval_mono(pulled[j].v, x);
    return (xu + qq - lam[j] * xv % qq) % qq == 0;
  };
  auto member_vanishes = [&](std::size_t j, const std::vector<long long>& x) {
    if (eval_mono(pulled[j].w, x) == 0) return true;
    return residual_vanishes(j, x);
  };
  auto in_stratum = [&](const Stratum& s, const std::vector<long long>& x) {
    if (s.empty) return false;
    if (!s.proper_transform) {
      bool mono_zero = false;
      for (std::size_t k : s.monomial)
        if (x[k] == 0) {
          mono_zero = true;
          break;
        }
      if (!mono_zero) return false;
    }
    for (std::size_t j : s.residuals)
      if (!residual_vanishes(j, x)) return false;
    return true;
  };

  std::vector<long long> x(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    if (cd.chart.is_invertible(k)) x[k] = 1;
  while (true) {
    bool in_union = false;
    for (const Stratum& s : cd.strata)
      if (in_stratum(s, x)) {
        in_union = true;
        break;
      }
    bool in_preimage = true;
    for (std::size_t j = 0; j < a && in_preimage; ++j)
      if (!member_vanishes(j, x)) in_preimage = false;
    if (in_union != in_preimage) {
      IntVec bad(n);
      for (std::size_t k = 0; k < n; ++k) bad[k] = Int(x[k]);
      return bad;
    }
    // Odometer step over the allowed residues.
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (x[k] + 1 < qq) {
        ++x[k];
        break;
      }
      x[k] = cd.chart.is_invertible(k) ? 1 : 0;
      if (k == 0) return std::nullopt;
    }
    if (n == 0) return std::nullopt;
  }
}

} // namespace fanstalk

#endif // FANSTALK_ORACLE_HPP
