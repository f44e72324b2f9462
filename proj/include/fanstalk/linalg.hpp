// fanstalk: exact integer linear algebra — Hermite forms, kernels, ranks,
// minors.  Everything is over Z or Q, no floating point anywhere.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_LINALG_HPP
#define FANSTALK_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fanstalk/numeric.hpp"

namespace fanstalk {

/// Row-major integer matrix.  Rows may be empty (0 x n is legal).
using IntMat = std::vector<IntVec>;

inline std::size_t mat_cols(const IntMat& a) { return a.empty() ? 0 : a[0].size(); }

inline IntMat transpose(const IntMat& a, std::size_t cols) {
  IntMat t(cols, IntVec(a.size(), Int(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

/// Result of the row Hermite reduction U * A = H with U unimodular.
struct HermiteForm {
  IntMat h;                      // row Hermite normal form (zero rows last)
  IntMat u;                      // unimodular transform, u * input == h
  std::vector<std::size_t> pivot_cols; // pivot column per nonzero row
};

/// Row-style Hermite normal form with transformation matrix.  Pivots are
/// positive, entries above each pivot are reduced into [0, pivot), zero rows
/// sink to the bottom.  The nonzero rows are the canonical basis of the row
/// lattice, so two row sets span the same lattice iff their forms agree.
inline HermiteForm hermite_form(const IntMat& a) {
  HermiteForm f;
  f.h = a;
  std::size_t k = a.size();
  std::size_t n = mat_cols(a);
  f.u.assign(k, IntVec(k, Int(0)));
  for (std::size_t i = 0; i < k; ++i) f.u[i][i] = 1;

  auto row_sub = [&](std::size_t i, std::size_t j, const Int& q) {
    // row_i -= q * row_j, mirrored on the transform
    for (std::size_t c = 0; c < n; ++c) f.h[i][c] -= q * f.h[j][c];
    for (std::size_t c = 0; c < k; ++c) f.u[i][c] -= q * f.u[j][c];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(f.h[i], f.h[j]);
    std::swap(f.u[i], f.u[j]);
  };
  auto row_negate = [&](std::size_t i) {
    for (std::size_t c = 0; c < n; ++c) f.h[i][c] = -f.h[i][c];
    for (std::size_t c = 0; c < k; ++c) f.u[i][c] = -f.u[i][c];
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < k; ++c) {
    // Euclid within the column until a single nonzero survives at row r.
    while (true) {
      std::size_t best = k;
      for (std::size_t i = r; i < k; ++i)
        if (f.h[i][c] != 0 &&
            (best == k || boost::multiprecision::abs(f.h[i][c]) <
                              boost::multiprecision::abs(f.h[best][c])))
          best = i;
      if (best == k) break; // column is zero below r
      row_swap(r, best);
      bool cleared = true;
      for (std::size_t i = r + 1; i < k; ++i) {
        if (f.h[i][c] == 0) continue;
        Int q = f.h[i][c] / f.h[r][c]; // truncated division
        row_sub(i, r, q);
        if (f.h[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (f.h[r][c] == 0) continue;
    if (f.h[r][c] < 0) row_negate(r);
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      Int q = f.h[i][c] / f.h[r][c];
      if (f.h[i][c] - q * f.h[r][c] < 0) q -= 1; // floor division
      if (q != 0) row_sub(i, r, q);
    }
    f.pivot_cols.push_back(c);
    ++r;
  }
  return f;
}

/// Rank over Q of the rows (= of the columns).
inline std::size_t rank_rational(const IntMat& a) {
  return hermite_form(a).pivot_cols.size();
}

/// Rank of the rows reduced modulo a prime p.
inline std::size_t rank_mod_p(const IntMat& a, const Int& p) {
  IntMat m = a;
  std::size_t rows = m.size(), cols = mat_cols(m);
  for (auto& row : m)
    for (auto& x : row) {
      x %= p;
      if (x < 0) x += p;
    }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    // Normalize pivot to 1 and eliminate below.
    Int inv = mod_p(Rat(1, 1) / Rat(m[rank][c]), p);
    for (std::size_t j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Int f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] = (m[i][j] - f * m[rank][j]) % p;
        if (m[i][j] < 0) m[i][j] += p;
      }
    }
    ++rank;
  }
  return rank;
}

/// Canonical basis (row Hermite form, zero rows dropped) of the lattice
/// spanned by the given vectors.  Lattice equality == basis equality.
inline IntMat lattice_canonical_basis(const IntMat& generators) {
  HermiteForm f = hermite_form(generators);
  IntMat basis(f.h.begin(), f.h.begin() + f.pivot_cols.size());
  return basis;
}

/// Basis of { x in Z^n : A x = 0 } for an m x n matrix given by rows.
/// Kernels of integer matrices are saturated, so this basis generates the
/// full lattice of integer relations.
inline IntMat integer_kernel_basis(const IntMat& a_rows, std::size_t n) {
  IntMat at = transpose(a_rows, n); // n rows of length m
  HermiteForm f = hermite_form(at);
  IntMat kernel;
  for (std::size_t i = f.pivot_cols.size(); i < f.h.size(); ++i)
    kernel.push_back(f.u[i]); // rows of U mapping to zero rows of H
  return lattice_canonical_basis(kernel);
}

/// Integer solution x of  x * B = target  (x expressed in the rows of B),
/// or nothing if target is outside the row lattice.
inline std::optional<IntVec> solve_in_row_lattice(const IntMat& b_rows,
                                                  const IntVec& target) {
  HermiteForm f = hermite_form(b_rows);
  std::size_t n = target.size();
  IntVec rem = target;
  IntVec y(b_rows.size(), Int(0));
  for (std::size_t i = 0; i < f.pivot_cols.size(); ++i) {
    std::size_t c = f.pivot_cols[i];
    if (rem[c] % f.h[i][c] != 0) return std::nullopt;
    Int q = rem[c] / f.h[i][c];
    y[i] = q;
    if (q != 0)
      for (std::size_t j = 0; j < n; ++j) rem[j] -= q * f.h[i][j];
  }
  if (!is_zero(rem)) return std::nullopt;
  // Pull back through the unimodular transform: x = y * U.
  IntVec x(b_rows.size(), Int(0));
  for (std::size_t i = 0; i < b_rows.size(); ++i)
    for (std::size_t j = 0; j < b_rows.size(); ++j) x[j] += y[i] * f.u[i][j];
  return x;
}

inline bool in_row_lattice(const IntMat& b_rows, const IntVec& target) {
  return solve_in_row_lattice(b_rows, target).has_value();
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMat a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { piv = i; break; }
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// gcd of all k x k minors of the matrix (0 when the matrix has fewer than k
/// rows or columns, or all such minors vanish).
inline Int gcd_of_minors(const IntMat& a, std::size_t k) {
  std::size_t m = a.size(), n = mat_cols(a);
  if (k == 0) return 1;
  if (k > m || k > n) return 0;
  std::vector<std::size_t> rows(k), cols(k);
  Int g = 0;

  // Enumerate k-subsets with a simple odometer.
  auto first_subset = [&](std::vector<std::size_t>& s) {
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
  };
  auto next_subset = [&](std::vector<std::size_t>& s, std::size_t limit) {
    std::size_t i = k;
    while (i-- > 0) {
      if (s[i] + (k - i) <= limit) {
        ++s[i];
        for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  first_subset(rows);
  do {
    first_subset(cols);
    do {
      IntMat sub(k, IntVec(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[rows[i]][cols[j]];
      g = igcd(g, determinant(sub));
      if (g == 1) return g;
    } while (next_subset(cols, n - 1));
  } while (next_subset(rows, m - 1));
  return g;
}

} // namespace fanstalk

#endif // FANSTALK_LINALG_HPP
