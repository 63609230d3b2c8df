#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "inoue/int_matrix.hpp"

namespace inoue {

/// Smith normal form S = U * m * V with U, V unimodular and
/// S = diag(s_0, s_1, ...), s_i > 0 for i < rank, s_i | s_{i+1}.
struct SmithForm {
  IntMat S;
  IntMat U;
  IntMat V;
  std::size_t rank = 0;
};

namespace detail {

inline void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst += k * row_src
inline void add_row(IntMat& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}
inline void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}
inline void negate_row(IntMat& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}
inline void negate_col(IntMat& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

}  // namespace detail

inline SmithForm snf(const IntMat& m) {
  using namespace detail;
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm out{m, IntMat::identity(rows), IntMat::identity(cols), 0};
  IntMat& A = out.S;
  IntMat& U = out.U;
  IntMat& V = out.V;
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    auto place_pivot = [&]() -> bool {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (A(i, j) != 0 && (!best || abs(A(i, j)) < abs(A(best->first, best->second)))) best = {i, j};
      if (!best) return false;
      swap_rows(A, t, best->first);
      swap_rows(U, t, best->first);
      swap_cols(A, t, best->second);
      swap_cols(V, t, best->second);
      return true;
    };
    if (!place_pivot()) break;

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (A(i, t) == 0) continue;
        Int q = A(i, t) / A(t, t);
        add_row(A, i, t, -q);
        add_row(U, i, t, -q);
        if (A(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (A(t, j) == 0) continue;
        Int q = A(t, j) / A(t, t);
        add_col(A, j, t, -q);
        add_col(V, j, t, -q);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) {
        place_pivot();
        continue;
      }
      // divisibility: fold an offending row into row t and repeat
      bool fixed = true;
      for (std::size_t i = t + 1; i < rows && fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (A(i, j) % A(t, t) != 0) {
            add_row(A, t, i, 1);
            add_row(U, t, i, 1);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (A(t, t) < 0) {
      negate_row(A, t);
      negate_row(U, t);
    }
    ++out.rank;
  }
  return out;
}

/// Basis of the integer kernel {x : m x = 0}, as columns of the returned matrix.
inline IntMat integer_kernel(const IntMat& m) {
  SmithForm f = snf(m);
  const std::size_t n = m.cols();
  IntMat k(n, n - f.rank);
  for (std::size_t j = f.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - f.rank) = f.V(i, j);
  return k;
}

/// Integer solution c of g * c = x, or nullopt when x is outside the column lattice of g.
inline std::optional<IntVec> solve_integer(const IntMat& g, const IntVec& x) {
  if (x.size() != g.rows()) throw PreconditionError("solve_integer: size mismatch");
  SmithForm f = snf(g);
  IntVec y = f.U * x;
  IntVec z(g.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < f.rank) {
      if (y[i] % f.S(i, i) != 0) return std::nullopt;
      z[i] = y[i] / f.S(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return f.V * z;
}

/// Column Hermite normal form: lower-triangular echelon basis of the column lattice,
/// positive pivots, entries left of each pivot reduced into [0, pivot). Zero columns dropped.
inline IntMat hermite_columns(const IntMat& g) {
  using namespace detail;
  IntMat h = g;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t piv = 0;
  for (std::size_t i = 0; i < rows && piv < cols; ++i) {
    // gcd-combine row i entries of columns piv.. into column piv
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t j = piv; j < cols; ++j)
        if (h(i, j) != 0 && (!best || abs(h(i, j)) < abs(h(i, *best)))) best = j;
      if (!best) break;
      swap_cols(h, piv, *best);
      bool done = true;
      for (std::size_t j = piv + 1; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        add_col(h, j, piv, -(h(i, j) / h(i, piv)));
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, piv) == 0) continue;
    if (h(i, piv) < 0) negate_col(h, piv);
    for (std::size_t j = 0; j < piv; ++j) add_col(h, j, piv, -floor_div(h(i, j), h(i, piv)));
    pivots.emplace_back(i, piv);
    ++piv;
  }
  IntMat out(rows, piv);
  for (std::size_t j = 0; j < piv; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = h(i, j);
  return out;
}

}  // namespace inoue
