#pragma once

#include <optional>

#include "inoue/normal_form.hpp"

namespace inoue {

/// Integer lattice spanned by the columns of a generator matrix.
/// Keeps the generators (for coefficient reporting) and their Hermite basis.
class LatticeBasis {
 public:
  explicit LatticeBasis(IntMat generators) : gens_(std::move(generators)), hnf_(hermite_columns(gens_)) {}

  const IntMat& generators() const noexcept { return gens_; }
  const IntMat& hermite() const noexcept { return hnf_; }
  std::size_t dim() const noexcept { return gens_.rows(); }
  std::size_t rank() const noexcept { return hnf_.cols(); }
  bool full_rank() const noexcept { return rank() == dim(); }

  /// Index [Z^n : L] for a full-rank lattice.
  Int index() const {
    if (!full_rank()) throw PreconditionError("index of a lattice that is not full rank");
    Int idx = 1;
    for (std::size_t i = 0; i < dim(); ++i) idx *= hnf_(i, i);
    return idx;
  }

  /// Coefficients c with generators * c = v, or nullopt.
  std::optional<IntVec> coefficients(const IntVec& v) const { return solve_integer(gens_, v); }

  bool contains(const IntVec& v) const {
    if (full_rank()) return is_zero(reduce(v));
    return coefficients(v).has_value();
  }

  /// Canonical representative of v + L inside the Hermite box (full-rank lattices only).
  IntVec reduce(IntVec v) const {
    if (!full_rank()) throw PreconditionError("coset reduction needs a full-rank lattice");
    if (v.size() != dim()) throw PreconditionError("reduce: size mismatch");
    for (std::size_t j = 0; j < dim(); ++j) {
      Int q = floor_div(v[j], hnf_(j, j));
      if (q == 0) continue;
      for (std::size_t i = j; i < dim(); ++i) v[i] -= q * hnf_(i, j);
    }
    return v;
  }

 private:
  static bool is_zero(const IntVec& v) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  IntMat gens_;
  IntMat hnf_;
};

/// The lattice r Z^2 + shift Z^2 with generators in the column order [r I | shift].
/// With shift = N' - I this is the lattice of the S+ homotopy criterion; with
/// N' + I the S- one.
inline LatticeBasis r_plus_image_lattice(const Int& r, const IntMat& shift) {
  if (r == 0) throw PreconditionError("r = 0 gives a degenerate lattice");
  if (shift.rows() != 2 || shift.cols() != 2) throw PreconditionError("expected a 2x2 matrix");
  IntMat g(2, 4);
  g(0, 0) = r;
  g(1, 1) = r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) g(i, 2 + j) = shift(i, j);
  return LatticeBasis(std::move(g));
}

/// Membership of v in r Z^2 + shift Z^2; on success the coefficients (u, v, k13, k23)
/// satisfy v = r (u, v) + shift (k13, k23).
inline std::optional<IntVec> lattice_membership(const Vec2& v, const Int& r, const IntMat& shift) {
  LatticeBasis L = r_plus_image_lattice(r, shift);
  IntVec x{v[0], v[1]};
  auto c = L.coefficients(x);
  if (c && L.generators() * *c != x) throw InternalError("lattice coefficients do not reproduce the vector");
  return c;
}

}  // namespace inoue
