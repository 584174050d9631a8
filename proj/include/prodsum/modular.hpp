#pragma once

// Exact linear algebra over Z/n. Matrices are diagonalised by unimodular row
// and column operations with every entry kept reduced mod n; the transforms
// stay invertible mod n, which is all the solver and the subgroup
// presentations need.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodsum/error.hpp"

namespace prodsum {

inline long mod(long x, long n) { return ((x % n) + n) % n; }

/// Inverse of a mod n; a must be a unit.
inline long inverse_mod(long a, long n) {
  long r0 = n, r1 = mod(a, n), s0 = 0, s1 = 1;
  while (r1) {
    long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) throw NotInvertible(std::to_string(a) + " is not a unit mod " + std::to_string(n));
  return mod(s0, n);
}

struct ModMatrix {
  std::size_t rows = 0, cols = 0;
  long n = 1;
  std::vector<long> a;

  ModMatrix() = default;
  ModMatrix(std::size_t r, std::size_t c, long modulus) : rows(r), cols(c), n(modulus), a(r * c, 0) {}

  static ModMatrix identity(std::size_t k, long modulus) {
    ModMatrix m(k, k, modulus);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1 % modulus;
    return m;
  }

  long& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  long operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  ModMatrix operator*(const ModMatrix& o) const {
    if (cols != o.rows) throw ShapeMismatch("matrix product " + std::to_string(cols) + " vs " + std::to_string(o.rows));
    ModMatrix p(rows, o.cols, n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k)
        if (long x = (*this)(i, k))
          for (std::size_t j = 0; j < o.cols; ++j) p(i, j) = (p(i, j) + x * o(k, j)) % n;
    return p;
  }

  std::vector<long> apply(const std::vector<long>& x) const {
    std::vector<long> y(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) y[i] = (y[i] + (*this)(i, j) * x[j]) % n;
    return y;
  }

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
};

/// U·A·V = D with D diagonal and U, V invertible mod n (Uinv, Vinv alongside).
struct Diagonalization {
  ModMatrix D, U, Uinv, V, Vinv;
  std::size_t rank = 0;  // number of nonzero diagonal entries, which come first

  std::vector<long> diagonal() const {
    std::vector<long> d;
    for (std::size_t i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
    return d;
  }
};

inline Diagonalization diagonalize(const ModMatrix& A) {
  const long n = A.n;
  Diagonalization z{A, ModMatrix::identity(A.rows, n), ModMatrix::identity(A.rows, n),
                    ModMatrix::identity(A.cols, n), ModMatrix::identity(A.cols, n), 0};
  auto& D = z.D;
  // row_i += q row_k, mirrored on U (left) and Uinv (right, inverse op)
  auto add_row = [&](std::size_t i, std::size_t k, long q) {
    q = mod(q, n);
    if (!q) return;
    for (std::size_t c = 0; c < D.cols; ++c) D(i, c) = (D(i, c) + q * D(k, c)) % n;
    for (std::size_t c = 0; c < z.U.cols; ++c) z.U(i, c) = (z.U(i, c) + q * z.U(k, c)) % n;
    for (std::size_t r = 0; r < z.Uinv.rows; ++r) z.Uinv(r, k) = mod(z.Uinv(r, k) - q * z.Uinv(r, i), n);
  };
  auto add_col = [&](std::size_t j, std::size_t k, long q) {
    q = mod(q, n);
    if (!q) return;
    for (std::size_t r = 0; r < D.rows; ++r) D(r, j) = (D(r, j) + q * D(r, k)) % n;
    for (std::size_t r = 0; r < z.V.rows; ++r) z.V(r, j) = (z.V(r, j) + q * z.V(r, k)) % n;
    for (std::size_t c = 0; c < z.Vinv.cols; ++c) z.Vinv(k, c) = mod(z.Vinv(k, c) - q * z.Vinv(j, c), n);
  };
  auto swap_rows = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t c = 0; c < D.cols; ++c) std::swap(D(i, c), D(k, c));
    for (std::size_t c = 0; c < z.U.cols; ++c) std::swap(z.U(i, c), z.U(k, c));
    for (std::size_t r = 0; r < z.Uinv.rows; ++r) std::swap(z.Uinv(r, i), z.Uinv(r, k));
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t r = 0; r < D.rows; ++r) std::swap(D(r, j), D(r, k));
    for (std::size_t r = 0; r < z.V.rows; ++r) std::swap(z.V(r, j), z.V(r, k));
    for (std::size_t c = 0; c < z.Vinv.cols; ++c) std::swap(z.Vinv(j, c), z.Vinv(k, c));
  };

  const std::size_t lim = std::min(D.rows, D.cols);
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      // smallest nonzero residue in the trailing block becomes the pivot
      std::size_t pr = D.rows, pc = 0;
      for (std::size_t r = t; r < D.rows; ++r)
        for (std::size_t c = t; c < D.cols; ++c)
          if (D(r, c) && (pr == D.rows || D(r, c) < D(pr, pc))) pr = r, pc = c;
      if (pr == D.rows) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      const long p = D(t, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < D.rows; ++r) {
        add_row(r, t, -(D(r, t) / p));
        clean &= D(r, t) == 0;
      }
      for (std::size_t c = t + 1; c < D.cols; ++c) {
        add_col(c, t, -(D(t, c) / p));
        clean &= D(t, c) == 0;
      }
      if (clean) break;
    }
    if (D(t, t) == 0) break;
    z.rank = t + 1;
  }
  return z;
}

/// Solves A·x = b over Z/n. nullopt when inconsistent.
inline std::optional<std::vector<long>> solve_mod(const ModMatrix& A, const std::vector<long>& b) {
  const long n = A.n;
  auto z = diagonalize(A);
  auto c = z.U.apply(b);
  std::vector<long> y(A.cols, 0);
  for (std::size_t t = 0; t < A.rows; ++t) {
    long d = t < A.cols ? z.D(t, t) : 0;
    long g = std::gcd(d, n);
    if (c[t] % g) return std::nullopt;
    if (d == 0) continue;  // c[t] == 0 here, free variable
    long ng = n / g;
    y[t] = ng == 1 ? 0 : mod((c[t] / g) * inverse_mod((d / g) % ng, ng), ng);
  }
  return z.V.apply(y);
}

/// Generators of {x : A·x = 0} over Z/n.
inline std::vector<std::vector<long>> kernel_mod(const ModMatrix& A) {
  const long n = A.n;
  auto z = diagonalize(A);
  std::vector<std::vector<long>> out;
  for (std::size_t t = 0; t < A.cols; ++t) {
    long d = t < A.rows ? z.D(t, t) : 0;
    long step = n / std::gcd(d, n);  // d·y = 0 iff y is a multiple of n/gcd(d,n)
    if (step == n) continue;
    std::vector<long> e(A.cols, 0);
    e[t] = step;
    out.push_back(z.V.apply(e));
  }
  return out;
}

/// A subgroup of ⊕ Z/orders[j] rewritten as a direct sum of cyclic groups:
/// generator t has order `orders[t]` and ambient coordinates `gens[t]`.
struct CyclicPresentation {
  std::vector<long> orders;
  std::vector<std::vector<long>> gens;
};

/// `span` lists generating vectors in ambient coordinates; every ambient
/// order must divide n.
inline CyclicPresentation present_subgroup(const std::vector<long>& ambient, const std::vector<std::vector<long>>& span,
                                           long n) {
  const std::size_t m = ambient.size(), k = span.size();
  CyclicPresentation out;
  if (k == 0) return out;
  // H·x = 0 in the ambient group, each row rescaled to a congruence mod n
  ModMatrix H(m, k, n);
  for (std::size_t j = 0; j < m; ++j) {
    if (n % ambient[j]) throw InvalidObject("order " + std::to_string(ambient[j]) + " does not divide " + std::to_string(n));
    for (std::size_t i = 0; i < k; ++i) H(j, i) = mod(span[i].at(j), ambient[j]) * (n / ambient[j]) % n;
  }
  auto rel = kernel_mod(H);
  ModMatrix K(k, std::max<std::size_t>(rel.size(), 1), n);
  for (std::size_t c = 0; c < rel.size(); ++c)
    for (std::size_t r = 0; r < k; ++r) K(r, c) = rel[c][r];
  auto z = diagonalize(K);
  for (std::size_t t = 0; t < k; ++t) {
    long d = t < K.cols ? z.D(t, t) : 0;
    long order = d == 0 ? n : std::gcd(d, n);
    if (order == 1) continue;
    std::vector<long> g(m, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < m; ++j) g[j] = (g[j] + z.Uinv(i, t) * span[i][j]) % ambient[j];
    out.orders.push_back(order);
    out.gens.push_back(std::move(g));
  }
  return out;
}

}  // namespace prodsum
