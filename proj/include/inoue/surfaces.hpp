#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "inoue/conjugacy.hpp"
#include "inoue/fundamental_groups.hpp"

namespace inoue {

using cplx = std::complex<double>;

/// Integer defining data of an Inoue surface.
/// The eigenvector a is sign * a_scale times the canonical eigenvector, b is b_scale
/// times the canonical one. The scales are in-memory only (they are not part of the
/// JSON schema) and exist so that rescaled presentations can be represented exactly.
struct SurfaceDescriptor {
  Kind kind = Kind::SPlus;
  IntMat matrix;
  Int p = 0, q = 0, r = 1;
  std::array<Rat, 2> t{Rat(0), Rat(0)};
  int sign = 1;
  bool conj = false;
  Rat a_scale = 1;
  Rat b_scale = 1;

  friend bool operator==(const SurfaceDescriptor& x, const SurfaceDescriptor& y) {
    return x.kind == y.kind && x.matrix == y.matrix && x.p == y.p && x.q == y.q && x.r == y.r && x.t == y.t &&
           x.sign == y.sign && x.conj == y.conj && x.a_scale == y.a_scale && x.b_scale == y.b_scale;
  }
};

inline SurfaceDescriptor make_splus(const IntMat& n, const Int& p, const Int& q, const Int& r, int sign = 1) {
  SurfaceDescriptor d;
  d.kind = Kind::SPlus;
  d.matrix = n;
  d.p = p;
  d.q = q;
  d.r = r;
  d.sign = sign;
  return d;
}

inline SurfaceDescriptor make_sminus(const IntMat& n, const Int& p, const Int& q, const Int& r, int sign = 1) {
  SurfaceDescriptor d = make_splus(n, p, q, r, sign);
  d.kind = Kind::SMinus;
  return d;
}

inline SurfaceDescriptor make_s0(const IntMat& m, bool conj = false) {
  SurfaceDescriptor d;
  d.kind = Kind::S0;
  d.matrix = m;
  d.p = d.q = 0;
  d.r = 0;
  d.conj = conj;
  return d;
}

/// Compact one-line form, also used as the census sort key.
inline std::string describe(const SurfaceDescriptor& d) {
  std::string s = to_string(d.kind) + " " + d.matrix.str();
  if (d.kind == Kind::S0) return s + (d.conj ? " conj" : "");
  s += " p=" + d.p.str() + " q=" + d.q.str() + " r=" + d.r.str() + " sign=" + std::to_string(d.sign);
  if (d.t[0] != 0 || d.t[1] != 0) s += " t=" + d.t[0].str() + "+" + d.t[1].str() + "i";
  return s;
}

/// Coefficients of det(xI - M) for a 3x3 M: x^3 + c1 x^2 + c2 x + c3.
inline std::ostream& operator<<(std::ostream& os, const SurfaceDescriptor& d) { return os << describe(d); }

inline Int cubic_discriminant(const std::vector<Int>& c) {
  const Int &b = c[1], &cc = c[2], &d = c[3];
  return 18 * b * cc * d - 4 * b * b * b * d + b * b * cc * cc - 4 * cc * cc * cc - 27 * d * d;
}

/// Every violated defining condition, each naming the clause it violates.
inline std::vector<Issue> validation_issues(const SurfaceDescriptor& d) {
  std::vector<Issue> out;
  if (d.sign != 1 && d.sign != -1) out.push_back({"sign", "sign must be 1 or -1"});
  if (d.a_scale <= 0) out.push_back({"a", "eigenvector rescaling must be positive"});
  if (d.b_scale == 0) out.push_back({"b", "eigenvector rescaling must be nonzero"});
  if (d.kind == Kind::S0) {
    if (d.matrix.rows() != 3 || d.matrix.cols() != 3) {
      out.push_back({"M", "M must be a 3x3 integer matrix"});
      return out;
    }
    if (det(d.matrix) != 1) out.push_back({"M", "M must lie in SL(3,Z) (det M = 1)"});
    auto c = charpoly(d.matrix);
    if (cubic_discriminant(c) >= 0)
      out.push_back({"M", "M must have eigenvalues alpha > 1, beta, conj(beta) with beta non-real (negative discriminant)"});
    else if (1 + c[1] + c[2] + c[3] >= 0)
      out.push_back({"M", "the real eigenvalue alpha of M must satisfy alpha > 1"});
    if (d.t[0] != 0 || d.t[1] != 0) out.push_back({"t", "t is only defined for S+"});
    return out;
  }
  auto spec = spectral_issues(d.matrix, d.kind);
  out.insert(out.end(), spec.begin(), spec.end());
  if (d.r == 0) out.push_back({"r", "r ≠ 0"});
  if (d.kind == Kind::SMinus && (d.t[0] != 0 || d.t[1] != 0)) out.push_back({"t", "t is only defined for S+"});
  if (d.conj) out.push_back({"conj", "conj is only defined for S0"});
  return out;
}

inline void validate(const SurfaceDescriptor& d) {
  auto issues = validation_issues(d);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

inline GroupDescriptor group_of(const SurfaceDescriptor& d) {
  validate(d);
  return make_group(d.kind, d.matrix, d.p, d.q, d.r);
}

/// Which cross term to use in e_i: as printed, n_i1 n_i2 b1 a2, or the symmetrised
/// n_i1 n_i2 (a1 b2 + a2 b1) / 2 (sensitivity experiments only).
enum class CrossTerm { AsPrinted, Symmetric };

/// Exact constants of an S+ / S- surface over Q(sqrt(D)).
struct DerivedGeometry {
  Kind kind = Kind::SPlus;
  IntMat N;
  Int p, q, r;
  QuadExt alpha, beta;
  QVec2 a, b;
  QuadExt theta;
  QVec2 e;
  QVec2 c;        // (N -+ I) c + e - (theta / r)(p, q) = 0
  QVec2 c_shift;  // c_i - a_i b_i / 2
  Vec2 p_shift2;  // 2 p~ = (2p + r n11 n12, 2q + r n21 n22)
  bool shifted_identity_holds = false;
};

inline DerivedGeometry derive_geometry(const SurfaceDescriptor& d, CrossTerm cross = CrossTerm::AsPrinted) {
  validate(d);
  if (d.kind == Kind::S0) throw PreconditionError("derive_geometry: exact constants exist only for S+ and S-");
  EigenData ed = eigen_data(d.matrix, d.kind);
  DerivedGeometry g;
  g.kind = d.kind;
  g.N = d.matrix;
  g.p = d.p;
  g.q = d.q;
  g.r = d.r;
  g.alpha = ed.alpha;
  g.beta = ed.beta;
  Rat as = d.a_scale * d.sign;
  g.a = {as * ed.a[0], as * ed.a[1]};
  g.b = {d.b_scale * ed.b[0], d.b_scale * ed.b[1]};
  g.theta = qdet(g.a, g.b);
  if (g.theta.is_zero()) throw InternalError("derive_geometry: theta = 0");
  const IntMat& n = d.matrix;
  for (std::size_t i = 0; i < 2; ++i) {
    Rat n1(n(i, 0)), n2(n(i, 1));
    QuadExt cross_term = cross == CrossTerm::AsPrinted ? n1 * n2 * (g.b[0] * g.a[1])
                                                       : (n1 * n2 / 2) * (g.a[0] * g.b[1] + g.a[1] * g.b[0]);
    g.e[i] = (n1 * (n1 - 1) / 2) * (g.a[0] * g.b[0]) + (n2 * (n2 - 1) / 2) * (g.a[1] * g.b[1]) + cross_term;
  }
  const int s = d.kind == Kind::SPlus ? 1 : -1;
  IntMat shift = n - Int(s) * IntMat::identity(2);
  QuadExt tr = g.theta * (Rat(1) / Rat(d.r));
  QVec2 rhs{tr * Rat(d.p) - g.e[0], tr * Rat(d.q) - g.e[1]};
  g.c = solve2(shift, rhs);
  QVec2 check = shift * g.c;
  if (!(check[0] + g.e[0] - tr * Rat(d.p)).is_zero() || !(check[1] + g.e[1] - tr * Rat(d.q)).is_zero())
    throw InternalError("derive_geometry: c does not solve its defining system");
  for (std::size_t i = 0; i < 2; ++i) g.c_shift[i] = g.c[i] - Rat(1, 2) * (g.a[i] * g.b[i]);
  g.p_shift2 = {2 * d.p + d.r * n(0, 0) * n(0, 1), 2 * d.q + d.r * n(1, 0) * n(1, 1)};
  QVec2 lhs = shift * g.c_shift;
  g.shifted_identity_holds = lhs[0] == tr * Rat(g.p_shift2[0], 2) && lhs[1] == tr * Rat(g.p_shift2[1], 2);
  if (cross == CrossTerm::AsPrinted && !g.shifted_identity_holds)
    throw InternalError("derive_geometry: (N -+ I) c~ = (theta / r) p~ fails");
  return g;
}

/// Floating-point data used to evaluate the group actions on H x C.
/// Plain values, so tests can perturb them.
struct NumericGeometry {
  Kind kind = Kind::SPlus;
  double alpha = 0;
  cplx beta;                   // S0 (already conjugated when conj is set)
  std::array<double, 3> a{};   // a_1, a_2 (, a_3 for S0)
  std::array<cplx, 3> b{};     // b_i (real for S+ / S-)
  double theta = 0;
  double r = 1;
  std::array<double, 2> c_shift{};
  cplx t;
};

namespace detail {

inline std::array<cplx, 3> null_vector3(const std::array<std::array<cplx, 3>, 3>& m) {
  std::array<cplx, 3> best{};
  double best_norm = -1;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto &x = m[i], &y = m[j];
      std::array<cplx, 3> v{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
      double nv = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
      if (nv > best_norm) {
        best_norm = nv;
        best = v;
      }
    }
  double s = std::sqrt(best_norm);
  for (auto& x : best) x /= s;
  return best;
}

}  // namespace detail

inline NumericGeometry numeric_geometry(const SurfaceDescriptor& d, CrossTerm cross = CrossTerm::AsPrinted) {
  NumericGeometry ng;
  ng.kind = d.kind;
  if (d.kind == Kind::S0) {
    validate(d);
    auto c = charpoly(d.matrix);
    double c1 = c[1].convert_to<double>(), c2 = c[2].convert_to<double>(), c3 = c[3].convert_to<double>();
    auto f = [&](long double x) { return ((x + c1) * x + c2) * x + c3; };
    // single real root, f(1) < 0: bisect on [1, hi]
    long double lo = 1, hi = 2;
    while (f(hi) < 0) hi *= 2;
    for (int i = 0; i < 200; ++i) {
      long double mid = (lo + hi) / 2;
      (f(mid) < 0 ? lo : hi) = mid;
    }
    double alpha = static_cast<double>((lo + hi) / 2);
    // x^2 + (c1 + alpha) x + (c2 + alpha (c1 + alpha)) has roots beta, conj(beta)
    double bb = c1 + alpha, cc = c2 + alpha * bb;
    cplx beta(-bb / 2, std::sqrt(std::max(0.0, 4 * cc - bb * bb)) / 2);
    if (d.conj) beta = std::conj(beta);
    ng.alpha = alpha;
    ng.beta = beta;
    std::array<std::array<cplx, 3>, 3> ma{}, mb{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double mij = d.matrix(i, j).convert_to<double>();
        ma[i][j] = mij - (i == j ? alpha : 0.0);
        mb[i][j] = mij - (i == j ? beta : cplx(0));
      }
    auto va = detail::null_vector3(ma);
    std::size_t lead = std::abs(va[0]) > 1e-12 ? 0 : (std::abs(va[1]) > 1e-12 ? 1 : 2);
    double sgn = va[lead].real() < 0 ? -1.0 : 1.0;
    double as = d.a_scale.convert_to<double>() * d.sign * sgn;
    for (std::size_t i = 0; i < 3; ++i) ng.a[i] = as * va[i].real();
    auto vb = detail::null_vector3(mb);
    for (std::size_t i = 0; i < 3; ++i) ng.b[i] = d.b_scale.convert_to<double>() * vb[i];
    return ng;
  }
  DerivedGeometry g = derive_geometry(d, cross);
  ng.alpha = g.alpha.to_double();
  ng.beta = g.beta.to_double();
  for (std::size_t i = 0; i < 2; ++i) {
    ng.a[i] = g.a[i].to_double();
    ng.b[i] = g.b[i].to_double();
    ng.c_shift[i] = g.c_shift[i].to_double();
  }
  ng.theta = g.theta.to_double();
  ng.r = d.r.convert_to<double>();
  ng.t = cplx(d.t[0].convert_to<double>(), d.t[1].convert_to<double>());
  return ng;
}

using Point = std::pair<cplx, cplx>;

/// (w, z) -> (w + zeta a, z + (zeta b) w + zeta c~ - (theta / r) y + (zeta a)(zeta b) / 2).
inline Point eval_gamma_action(const NumericGeometry& ng, const GammaRElem& g, cplx w, cplx z) {
  double z1 = g.zeta[0].convert_to<double>(), z2 = g.zeta[1].convert_to<double>();
  double y = g.y2.convert_to<double>() / 2;
  double za = z1 * ng.a[0] + z2 * ng.a[1];
  double zb = z1 * ng.b[0].real() + z2 * ng.b[1].real();
  double zc = z1 * ng.c_shift[0] + z2 * ng.c_shift[1];
  return {w + za, z + zb * w + zc - (ng.theta / ng.r) * y + 0.5 * za * zb};
}

inline Point eval_gamma_action(const DerivedGeometry& g, const GammaRElem& e, cplx w, cplx z) {
  NumericGeometry ng;
  ng.kind = g.kind;
  for (std::size_t i = 0; i < 2; ++i) {
    ng.a[i] = g.a[i].to_double();
    ng.b[i] = g.b[i].to_double();
    ng.c_shift[i] = g.c_shift[i].to_double();
  }
  ng.theta = g.theta.to_double();
  ng.r = g.r.convert_to<double>();
  return eval_gamma_action(ng, e, w, z);
}

inline Point eval_g0(const NumericGeometry& ng, cplx w, cplx z, bool inverse = false) {
  switch (ng.kind) {
    case Kind::S0: return inverse ? Point{w / ng.alpha, z / ng.beta} : Point{ng.alpha * w, ng.beta * z};
    case Kind::SPlus: return inverse ? Point{w / ng.alpha, z - ng.t} : Point{ng.alpha * w, z + ng.t};
    case Kind::SMinus: return {inverse ? w / ng.alpha : ng.alpha * w, -z};
  }
  return {w, z};
}

/// Action of a normal-form element g0^n0 gamma.
inline Point eval_group_elem(const NumericGeometry& ng, const GroupElem& g, cplx w, cplx z) {
  Point pt{w, z};
  if (ng.kind == Kind::S0) {
    for (std::size_t j = 0; j < 3; ++j) {
      double l = g.lat[j].convert_to<double>();
      pt.first += l * ng.a[j];
      pt.second += l * ng.b[j];
    }
  } else {
    pt = eval_gamma_action(ng, g.gamma, pt.first, pt.second);
  }
  long long n = g.n0.convert_to<long long>();
  for (long long i = 0; i < (n >= 0 ? n : -n); ++i) pt = eval_g0(ng, pt.first, pt.second, n < 0);
  return pt;
}

inline Point eval_generator(const NumericGeometry& ng, int index, cplx w, cplx z) {
  if (index == 0) return eval_g0(ng, w, z);
  if (index < 1 || index > 3) throw PreconditionError("eval_generator: index must be 0..3");
  if (ng.kind == Kind::S0) {
    auto i = static_cast<std::size_t>(index - 1);
    return {w + ng.a[i], z + ng.b[i]};
  }
  return eval_gamma_action(ng, mu_embed(index == 1, index == 2, index == 3, Int(1)), w, z);
}

inline Point eval_generator(const SurfaceDescriptor& d, int index, cplx w, cplx z) {
  return eval_generator(numeric_geometry(d), index, w, z);
}

/// Word g_{i1}^{e1} ... g_{ik}^{ek} acting as the composition of maps (rightmost first).
inline Point eval_word(const NumericGeometry& ng, const Word& word, cplx w, cplx z) {
  Point pt{w, z};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    auto [gen, e] = *it;
    for (long long k = 0; k < (e >= 0 ? e : -e); ++k) {
      if (e > 0) {
        pt = eval_generator(ng, gen, pt.first, pt.second);
      } else if (gen == 0) {
        pt = eval_g0(ng, pt.first, pt.second, true);
      } else if (ng.kind == Kind::S0) {
        auto i = static_cast<std::size_t>(gen - 1);
        pt = {pt.first - ng.a[i], pt.second - ng.b[i]};
      } else {
        pt = eval_gamma_action(ng, gr_inv(mu_embed(gen == 1, gen == 2, gen == 3, Int(1))), pt.first, pt.second);
      }
    }
  }
  return pt;
}

/// The standard 25-point grid.
inline std::vector<Point> sample_grid() {
  const cplx ws[] = {{0, 0.5}, {0, 1}, {1, 1}, {-1, 2}, {0.3, 0.7}};
  const cplx zs[] = {{0, 0}, {1, 0}, {0, 1}, {1, -1}, {2, 0.5}};
  std::vector<Point> grid;
  for (auto w : ws)
    for (auto z : zs) grid.push_back({w, z});
  return grid;
}

inline double point_distance(const Point& x, const Point& y) {
  return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
}

struct NumericRelationResult {
  std::string name;
  double max_deviation = 0;
  bool passed = false;
};

/// Both sides of every defining relation composed as maps of H x C and compared on the grid.
inline std::vector<NumericRelationResult> numeric_relation_check(const NumericGeometry& ng, const GroupDescriptor& G,
                                                                 double tol = 1e-9) {
  std::vector<NumericRelationResult> out;
  for (const auto& rel : defining_relations(G)) {
    double dev = 0;
    for (const auto& [w, z] : sample_grid())
      dev = std::max(dev, point_distance(eval_word(ng, rel.lhs, w, z), eval_word(ng, rel.rhs, w, z)));
    out.push_back({rel.name, dev, dev < tol});
  }
  return out;
}

inline std::vector<NumericRelationResult> numeric_relation_check(const SurfaceDescriptor& d, double tol = 1e-9,
                                                                 CrossTerm cross = CrossTerm::AsPrinted) {
  return numeric_relation_check(numeric_geometry(d, cross), group_of(d), tol);
}

/// t set to 0 and eigenvector rescalings dropped; the orientation of a is returned as the sign.
inline std::pair<SurfaceDescriptor, int> canonicalize(const SurfaceDescriptor& d) {
  validate(d);
  SurfaceDescriptor c = d;
  c.t = {Rat(0), Rat(0)};
  c.a_scale = 1;
  c.b_scale = 1;
  return {c, c.sign};
}

/// Affine map (w, z) -> (c w + d, e w + f z + g) of H x C.
struct BiholMap {
  QuadExt c, d, e, f, g;
  Point operator()(const Point& pt) const {
    return {c.to_double() * pt.first + d.to_double(), e.to_double() * pt.first + f.to_double() * pt.second + g.to_double()};
  }
  Point inverse(const Point& pt) const {
    cplx w = (pt.first - d.to_double()) / c.to_double();
    return {w, (pt.second - e.to_double() * w - g.to_double()) / f.to_double()};
  }
};

}  // namespace inoue
