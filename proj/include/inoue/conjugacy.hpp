#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "inoue/kind.hpp"
#include "inoue/lattice.hpp"
#include "inoue/quad_ext.hpp"

namespace inoue {

/// Lattice of integer matrices, given by a (reduced) basis.
struct MatrixLattice {
  std::vector<IntMat> basis;
  std::size_t rank() const noexcept { return basis.size(); }
};

namespace detail {

inline Int round_nearest(const Rat& x) {
  Int num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  return floor_div(2 * num + den, 2 * den);
}

inline Rat rdot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Exact LLL reduction (delta = 3/4) of linearly independent integer vectors.
/// Intended for the tiny ranks used here (<= 3); Gram-Schmidt is recomputed each step.
inline std::vector<IntVec> lll_reduce(std::vector<IntVec> b) {
  const std::size_t k = b.size();
  if (k < 2) return b;
  const std::size_t n = b[0].size();
  std::vector<std::vector<Rat>> bs(k, std::vector<Rat>(n));
  std::vector<std::vector<Rat>> mu(k, std::vector<Rat>(k));
  std::vector<Rat> B(k);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t t = 0; t < n; ++t) bs[i][t] = Rat(b[i][t]);
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<Rat> bi(n);
        for (std::size_t t = 0; t < n; ++t) bi[t] = Rat(b[i][t]);
        mu[i][j] = detail::rdot(bi, bs[j]) / B[j];
        for (std::size_t t = 0; t < n; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      B[i] = detail::rdot(bs[i], bs[i]);
      if (B[i] == 0) throw PreconditionError("lll_reduce: vectors are linearly dependent");
    }
  };
  gram_schmidt();
  std::size_t i = 1;
  while (i < k) {
    for (std::size_t jj = i; jj-- > 0;) {
      Int q = detail::round_nearest(mu[i][jj]);
      if (q == 0) continue;
      for (std::size_t t = 0; t < n; ++t) b[i][t] -= q * b[jj][t];
      gram_schmidt();
    }
    if (B[i] >= (Rat(3) / 4 - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
      ++i;
    } else {
      std::swap(b[i], b[i - 1]);
      gram_schmidt();
      i = i > 1 ? i - 1 : 1;
    }
  }
  return b;
}

/// Lattice of all integer K with K * n = n_prime * K (the commutant when n = n_prime),
/// computed as the integer kernel of the induced linear map on vec(K), LLL-reduced.
inline MatrixLattice commutant_lattice(const IntMat& n, const IntMat& n_prime) {
  if (!n.square() || !n_prime.square() || n.rows() != n_prime.rows())
    throw PreconditionError("commutant_lattice: expected square matrices of equal size");
  const std::size_t d = n.rows();
  IntMat map(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          Int coef = 0;
          if (a == i) coef += n(b, j);
          if (b == j) coef -= n_prime(i, a);
          map(i * d + j, a * d + b) = coef;
        }
  IntMat ker = integer_kernel(map);
  std::vector<IntVec> vecs;
  for (std::size_t c = 0; c < ker.cols(); ++c) vecs.push_back(ker.column(c));
  vecs = lll_reduce(std::move(vecs));
  MatrixLattice out;
  for (const auto& v : vecs) out.basis.push_back(from_vector(d, d, v));
  return out;
}

/// Visits coefficient tuples in [-bound, bound]^rank shell by shell (max-norm 0, 1, 2, ...).
/// Inside a shell, tuples with smaller L1 norm come first; ties prefer small trailing
/// coordinates, each coordinate ranked 0, 1, -1, 2, -2, ... Stops when the visitor returns true.
inline bool for_each_coefficient(std::size_t rank, long bound, const std::function<bool(const std::vector<long>&)>& visit) {
  std::vector<long> x(rank, 0);
  if (rank == 0) return visit(x);
  auto code = [](long v) { return v > 0 ? 2 * v - 1 : -2 * v; };
  std::vector<std::vector<long>> shell;
  for (long s = 0; s <= bound; ++s) {
    shell.clear();
    std::function<void(std::size_t, bool)> rec = [&](std::size_t pos, bool hit) {
      if (pos == rank) {
        if (hit) shell.push_back(x);
        return;
      }
      for (long v = -s; v <= s; ++v) {
        x[pos] = v;
        rec(pos + 1, hit || v == s || v == -s);
      }
    };
    rec(0, false);
    std::sort(shell.begin(), shell.end(), [&](const std::vector<long>& a, const std::vector<long>& b) {
      long la = 0, lb = 0;
      for (std::size_t i = 0; i < rank; ++i) {
        la += a[i] < 0 ? -a[i] : a[i];
        lb += b[i] < 0 ? -b[i] : b[i];
      }
      if (la != lb) return la < lb;
      for (std::size_t i = rank; i-- > 0;)
        if (a[i] != b[i]) return code(a[i]) < code(b[i]);
      return false;
    });
    for (const auto& c : shell)
      if (visit(c)) return true;
  }
  return false;
}

inline IntMat combine(const MatrixLattice& lat, const std::vector<long>& coeffs) {
  IntMat m(lat.basis.at(0).rows(), lat.basis.at(0).cols());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) m = m + Int(coeffs[i]) * lat.basis[i];
  return m;
}

namespace detail {

// det(x A + y B) = qa x^2 + qb x y + qc y^2 for 2x2 A, B; evaluated in 128-bit when small.
struct BinaryForm2 {
  Int qa, qb, qc;
  bool small = false;
  __int128 sa = 0, sb = 0, sc = 0;
  explicit BinaryForm2(const MatrixLattice& lat) {
    const IntMat& A = lat.basis[0];
    const IntMat& B = lat.basis[1];
    qa = det(A);
    qc = det(B);
    qb = det(A + B) - qa - qc;
    const Int lim = Int(1) << 60;
    small = abs(qa) < lim && abs(qb) < lim && abs(qc) < lim;
    if (small) {
      sa = static_cast<__int128>(qa.convert_to<long long>());
      sb = static_cast<__int128>(qb.convert_to<long long>());
      sc = static_cast<__int128>(qc.convert_to<long long>());
    }
  }
  Int eval(long x, long y) const {
    if (small) {
      __int128 v = sa * x * x + sb * x * y + sc * y * y;
      if (v == 1) return 1;
      if (v == -1) return -1;
      if (v == 0) return 0;
      return v > 0 ? 2 : -2;  // only |det| = 1 matters to callers
    }
    return qa * x * x + qb * x * y + qc * y * y;
  }
};

}  // namespace detail

/// K = sum x_i B_i with det K = det_target (or +-1 when unset), |x_i| <= bound, searched
/// shell by shell. nullopt means "not found within bound", not nonexistence.
inline std::optional<IntMat> unimodular_in_lattice(const MatrixLattice& lat, std::optional<int> det_target, long bound) {
  if (bound < 1) throw PreconditionError("unimodular_in_lattice: bound must be >= 1");
  if (lat.rank() == 0) return std::nullopt;
  auto accept = [&](const Int& d) { return det_target ? d == *det_target : (d == 1 || d == -1); };
  std::optional<IntMat> found;
  if (lat.rank() == 2 && lat.basis[0].rows() == 2) {
    detail::BinaryForm2 form(lat);
    for_each_coefficient(2, bound, [&](const std::vector<long>& c) {
      if (!accept(form.eval(c[0], c[1]))) return false;
      found = combine(lat, c);
      return true;
    });
  } else {
    for_each_coefficient(lat.rank(), bound, [&](const std::vector<long>& c) {
      IntMat k = combine(lat, c);
      if (!accept(det(k))) return false;
      found = std::move(k);
      return true;
    });
  }
  return found;
}

enum class SearchStatus { Found, Absent, Inconclusive };

struct ConjugatorResult {
  SearchStatus status = SearchStatus::Absent;
  std::optional<IntMat> K;
  std::string reason;
};

/// K in GL(n, Z) with K n K^-1 = n_prime (and det K = det_sign when given).
/// Absent is certain only when the characteristic polynomials differ.
inline ConjugatorResult gl_conjugator(const IntMat& n, const IntMat& n_prime, std::optional<int> det_sign, long bound) {
  if (charpoly(n) != charpoly(n_prime)) return {SearchStatus::Absent, std::nullopt, "characteristic polynomials differ"};
  MatrixLattice lat = commutant_lattice(n, n_prime);
  if (lat.rank() == 0) return {SearchStatus::Absent, std::nullopt, "no rational intertwiner"};
  auto k = unimodular_in_lattice(lat, det_sign, bound);
  if (!k) return {SearchStatus::Inconclusive, std::nullopt, "no unimodular intertwiner within bound"};
  if (*k * n != n_prime * *k) throw InternalError("gl_conjugator: K N != N' K");
  return {SearchStatus::Found, std::move(k), ""};
}

/// Eigen-data of a hyperbolic 2x2 matrix over Q(sqrt(D)), D = tr^2 - 4 det.
struct EigenData {
  QuadExt alpha;  // eigenvalue > 1
  QuadExt beta;   // det / alpha
  QVec2 a;        // eigenvector for alpha
  QVec2 b;        // eigenvector for beta
  Int D;
};

/// (n12, lambda - n11) when n12 != 0, else (lambda - n22, n21); first nonzero coordinate made positive.
inline QVec2 canonical_eigenvector(const IntMat& n, const QuadExt& lambda) {
  QVec2 v;
  if (n(0, 1) != 0) v = {QuadExt::rational(Rat(n(0, 1)), lambda.D()), lambda - Rat(n(0, 0))};
  else v = {lambda - Rat(n(1, 1)), QuadExt::rational(Rat(n(1, 0)), lambda.D())};
  int s = v[0].sign() != 0 ? v[0].sign() : v[1].sign();
  if (s < 0) v = {-v[0], -v[1]};
  return v;
}

inline std::vector<Issue> spectral_issues(const IntMat& n, Kind kind) {
  std::vector<Issue> issues;
  if (n.rows() != 2 || n.cols() != 2) {
    issues.push_back({"N", "N must be a 2x2 integer matrix"});
    return issues;
  }
  Int d = det(n), t = trace(n);
  if (kind == Kind::SPlus) {
    if (d != 1) issues.push_back({"N", "N must lie in SL(2,Z) (det N = 1)"});
    else if (t <= 2) issues.push_back({"N", "N must have eigenvalues alpha > 1, 1/alpha (tr N > 2)"});
  } else if (kind == Kind::SMinus) {
    if (d != -1) issues.push_back({"N", "N must have det N = -1"});
    else if (t < 1) issues.push_back({"N", "N must have eigenvalues alpha > 1, -1/alpha (tr N >= 1)"});
  } else {
    issues.push_back({"kind", "eigen data over a quadratic field needs S+ or S-"});
  }
  return issues;
}

inline EigenData eigen_data(const IntMat& n, Kind kind) {
  auto issues = spectral_issues(n, kind);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  Int t = trace(n), d = det(n);
  Int D = t * t - 4 * d;
  QuadExt alpha(Rat(t) / 2, Rat(1) / 2, D);
  QuadExt beta = QuadExt::rational(Rat(t), D) - alpha;
  EigenData e{alpha, beta, canonical_eigenvector(n, alpha), canonical_eigenvector(n, beta), D};
  if (!(e.alpha > QuadExt::rational(Rat(1), D))) throw InternalError("eigen_data: alpha <= 1");
  return e;
}

/// Unit group data of the commutant order of a hyperbolic 2x2 matrix.
struct UnitGroup {
  IntMat fundamental;    // generates all units modulo -I
  IntMat det1_generator; // generates the det-1 units modulo -I
  bool has_det_minus_one = false;
};

inline UnitGroup unit_group(const IntMat& n, long bound) {
  if (n.rows() != 2 || n.cols() != 2) throw PreconditionError("unit_group: expected a 2x2 matrix");
  Int t = trace(n), d = det(n);
  Int D = t * t - 4 * d;
  if (D <= 0 || is_perfect_square(D) || (d != 1 && d != -1))
    throw PreconditionError("unit_group: matrix must be hyperbolic in GL(2,Z) with irreducible characteristic polynomial");
  MatrixLattice lat = commutant_lattice(n, n);
  if (lat.rank() != 2) throw InternalError("unit_group: commutant of a hyperbolic matrix must have rank 2");
  detail::BinaryForm2 form(lat);
  const Int ta = trace(lat.basis[0]), tb = trace(lat.basis[1]);
  const IntMat I = IntMat::identity(2);
  std::optional<IntMat> best;
  Int best_tr = 0;
  // units come in pairs +-X, so y >= 0 (and x > 0 when y = 0) covers every class
  for (long y = 0; y <= bound; ++y)
    for (long x = y == 0 ? 1 : -bound; x <= bound; ++x) {
      Int dt = form.eval(x, y);
      if (dt != 1 && dt != -1) continue;
      Int tr = abs(Int(x) * ta + Int(y) * tb);
      if (best && tr >= best_tr) continue;
      IntMat k = combine(lat, {x, y});
      if (k == I || k == -I) continue;
      best = std::move(k);
      best_tr = tr;
    }
  if (!best) throw SearchBoundExhausted("unit_group: no non-trivial unit found", bound);

  UnitGroup ug;
  ug.fundamental = *best;
  ug.has_det_minus_one = det(*best) == -1;
  IntMat c = ug.has_det_minus_one ? IntMat(*best * *best) : *best;
  if (trace(c) < 0) c = -c;
  // orient C so that it expands the eigenvector of (tr + sqrt(D)) / 2
  QuadExt lambda(Rat(t) / 2, Rat(1) / 2, D);
  QVec2 a = canonical_eigenvector(n, lambda);
  QVec2 ca = c * a;
  QuadExt ev = a[0].is_zero() ? ca[1] / a[1] : ca[0] / a[0];
  if (ev < QuadExt::rational(Rat(1), D)) c = inverse_unimodular(c);
  ug.det1_generator = std::move(c);
  return ug;
}

/// Non-central det-1 unit of the commutant of n_prime generating all det-1 units modulo -I.
inline IntMat centralizer_generator(const IntMat& n_prime, long bound) {
  return unit_group(n_prime, bound).det1_generator;
}

inline Int frobenius_norm2(const IntMat& m) {
  Int s = 0;
  for (const auto& x : m.data()) s += x * x;
  return s;
}

/// Smallest representative of the orbit {+-C^k K}, C generating the relevant units.
/// Ties prefer positive trace, then the lexicographically larger entry list.
inline IntMat normalize_conjugator(const IntMat& k, const IntMat& c) {
  auto better = [](const IntMat& a, const IntMat& b) {
    Int na = frobenius_norm2(a), nb = frobenius_norm2(b);
    if (na != nb) return na < nb;
    if (trace(a) != trace(b)) return trace(a) > trace(b);
    return a.data() > b.data();
  };
  const IntMat ci = inverse_unimodular(c);
  IntMat best = k;
  for (const IntMat* step : {&c, &ci}) {
    IntMat cur = k;
    for (int i = 0; i < 64; ++i) {
      cur = *step * cur;
      if (frobenius_norm2(cur) > frobenius_norm2(best) && i > 2) break;
      if (better(cur, best)) best = cur;
    }
  }
  if (better(-best, best)) best = -best;
  return best;
}

/// K in GL(2, Z) with K n K^-1 = n_prime, reduced to the smallest member of its
/// centralizer orbit (so (N, N) gives I).
inline ConjugatorResult gl2z_conjugator(const IntMat& n, const IntMat& n_prime, std::optional<int> det_sign, long bound) {
  if (n.rows() != 2 || n.cols() != 2 || n_prime.rows() != 2 || n_prime.cols() != 2)
    throw PreconditionError("gl2z_conjugator: expected 2x2 matrices");
  ConjugatorResult res = gl_conjugator(n, n_prime, det_sign, bound);
  if (res.status != SearchStatus::Found) return res;
  Int d = det(n_prime);
  Int t = trace(n_prime);
  Int D = t * t - 4 * d;
  if ((d == 1 || d == -1) && D > 0 && !is_perfect_square(D)) {
    UnitGroup ug = unit_group(n_prime, bound);
    const IntMat& c = det_sign ? ug.det1_generator : ug.fundamental;
    res.K = normalize_conjugator(*res.K, c);
  }
  if (*res.K * n != n_prime * *res.K) throw InternalError("gl2z_conjugator: K N != N' K");
  return res;
}

}  // namespace inoue
