#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "inoue/lattice.hpp"
#include "inoue/surfaces.hpp"

namespace inoue {

/// Bounds of the finite searches. Every "Unknown" verdict reports the bound it ran into.
struct SearchBounds {
  long conjugator = 64;  // coefficient box for GL(2,Z) conjugators and units
  long eta = 8;          // box for (l1, l2) in the biholomorphism search
  long s0 = 6;           // coefficient box for GL(3,Z) conjugators

  /// Defaults, overridden by INOUE_DEFAULT_BOUNDS="conj=64,eta=8,s0=6" (any subset).
  static SearchBounds from_env() {
    SearchBounds b;
    if (const char* env = std::getenv("INOUE_DEFAULT_BOUNDS")) b = parse(env, b);
    return b;
  }

  static SearchBounds parse(const std::string& spec) { return parse(spec, SearchBounds()); }

  static SearchBounds parse(const std::string& spec, SearchBounds b) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw PreconditionError("bounds: expected key=value, got '" + item + "'");
      std::string key = item.substr(0, eq);
      long value = 0;
      try {
        std::size_t used = 0;
        value = std::stol(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw PreconditionError("bounds: '" + item + "' is not an integer value");
      }
      if (value < 1) throw PreconditionError("bounds: '" + key + "' must be >= 1");
      if (key == "conj") b.conjugator = value;
      else if (key == "eta") b.eta = value;
      else if (key == "s0") b.s0 = value;
      else throw PreconditionError("bounds: unknown key '" + key + "'");
    }
    return b;
  }
};

/// Certificate of a homotopy equivalence S ~ S'.
/// S+ / S-: K N^epsilon K^-1 = N', r' = delta det(K) r and
///   delta (p', q') - epsilon K (p, q) = r (u, v) + (N' -+ I)(k13, k23).
/// S0: K M^epsilon K^-1 = M' (delta = 1, no coefficients).
struct EquivWitness {
  IntMat K;
  int delta = 1;
  int epsilon = 1;
  Vec2 uv{0, 0};
  Vec2 k3{0, 0};  // (k13, k23)
};

enum class VerdictKind { Equivalent, NotEquivalent, Unknown };

inline std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Equivalent: return "equivalent";
    case VerdictKind::NotEquivalent: return "not-equivalent";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<EquivWitness> witness;
  std::string obstruction;  // NotEquivalent: which invariant differs; Unknown: what ran out
  long bound = 0;           // Unknown only
  std::string note;         // caveats attached to the verdict (S0)

  static Verdict equivalent(EquivWitness w) { return {VerdictKind::Equivalent, std::move(w), "", 0, ""}; }
  static Verdict not_equivalent(std::string why) { return {VerdictKind::NotEquivalent, std::nullopt, std::move(why), 0, ""}; }
  static Verdict unknown(std::string why, long bound) { return {VerdictKind::Unknown, std::nullopt, std::move(why), bound, ""}; }
};

namespace detail {

inline int pm_sign(Kind k) { return k == Kind::SPlus ? 1 : -1; }

inline IntMat signed_shift(const IntMat& n, Kind k) { return n - Int(pm_sign(k)) * IntMat::identity(2); }

inline IntMat matrix_power_signed(const IntMat& m, int e) { return e == 1 ? m : inverse_unimodular(m); }

inline Vec2 to_vec2(const IntVec& v) { return {v.at(0), v.at(1)}; }

}  // namespace detail

/// Exact re-check of a witness against both descriptors.
inline bool verify_witness(const SurfaceDescriptor& s, const SurfaceDescriptor& sp, const EquivWitness& w) {
  if (s.kind != sp.kind) return false;
  if (w.epsilon != 1 && w.epsilon != -1) return false;
  if (w.delta != 1 && w.delta != -1) return false;
  const std::size_t n = s.kind == Kind::S0 ? 3 : 2;
  if (w.K.rows() != n || w.K.cols() != n || !is_unimodular(w.K)) return false;
  IntMat ne = detail::matrix_power_signed(s.matrix, w.epsilon);
  if (w.K * ne != sp.matrix * w.K) return false;
  if (s.kind == Kind::S0) return w.delta == 1;
  if (s.kind == Kind::SMinus && w.epsilon != 1) return false;
  if (sp.r != Int(w.delta) * det(w.K) * s.r) return false;
  Vec2 kp = w.K * Vec2{s.p, s.q};
  Vec2 lhs{w.delta * sp.p - w.epsilon * kp[0], w.delta * sp.q - w.epsilon * kp[1]};
  IntMat shift = detail::signed_shift(sp.matrix, sp.kind);
  Vec2 sk = shift * w.k3;
  return lhs == Vec2{s.r * w.uv[0] + sk[0], s.r * w.uv[1] + sk[1]};
}

namespace detail {

// All conjugators with K N^eps K^-1 = N' are +-U^k K0, U the fundamental unit of the
// centralizer of N'. The criterion only sees K (p, q) modulo L and det K, and U acts
// on (Z^2 / L) x {+-1} as a permutation, so one period of that orbit decides.
inline Verdict decide_homotopy_2x2(const SurfaceDescriptor& s, const SurfaceDescriptor& sp, long bound) {
  validate(s);
  validate(sp);
  if (s.kind != sp.kind) return Verdict::not_equivalent("kind");
  if (abs(s.r) != abs(sp.r)) return Verdict::not_equivalent("r-magnitude");
  if (charpoly(s.matrix) != charpoly(sp.matrix) &&
      (s.kind == Kind::SMinus || charpoly(inverse_unimodular(s.matrix)) != charpoly(sp.matrix)))
    return Verdict::not_equivalent("characteristic polynomial");

  const IntMat shift = signed_shift(sp.matrix, sp.kind);
  const LatticeBasis L = r_plus_image_lattice(s.r, shift);
  const Vec2 p{s.p, s.q}, pp{sp.p, sp.q};
  auto red = [&](const Vec2& v) { return to_vec2(L.reduce(IntVec{v[0], v[1]})); };

  UnitGroup ug;
  try {
    ug = unit_group(sp.matrix, bound);
  } catch (const SearchBoundExhausted& e) {
    return Verdict::unknown("unit group of N'", e.bound());
  }
  const IntMat& U = ug.fundamental;
  const int det_u = det(U) == 1 ? 1 : -1;

  bool inconclusive = false;
  const std::vector<int> epsilons = s.kind == Kind::SPlus ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (int eps : epsilons) {
    IntMat ne = matrix_power_signed(s.matrix, eps);
    ConjugatorResult cr = gl2z_conjugator(ne, sp.matrix, std::nullopt, bound);
    if (cr.status == SearchStatus::Inconclusive) inconclusive = true;
    if (cr.status != SearchStatus::Found) continue;
    const IntMat& K0 = *cr.K;
    const int det0 = det(K0) == 1 ? 1 : -1;

    // orbit of (U^k K0 p mod L, det) until it closes
    struct State {
      Vec2 x;
      int d;
    };
    std::vector<State> orbit;
    State cur{red(K0 * p), det0};
    do {
      orbit.push_back(cur);
      cur = State{red(U * cur.x), cur.d * det_u};
    } while (!(cur.x == orbit[0].x && cur.d == orbit[0].d));
    const long period = static_cast<long>(orbit.size());

    // smallest |k| first (k >= 0 before k < 0), then +K before -K
    std::vector<long> ks;
    for (long m = 0; m < period; ++m) ks.push_back(m <= period - m ? m : m - period);
    std::stable_sort(ks.begin(), ks.end(), [](long a, long b) {
      long aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
      if (aa != bb) return aa < bb;
      return a > b;
    });
    for (long k : ks) {
      const State& st = orbit[static_cast<std::size_t>(((k % period) + period) % period)];
      for (int sg : {1, -1}) {
        // det(-K) = det K in dimension 2
        Int dr = Int(st.d) * s.r;
        if (sp.r % dr != 0) continue;
        int delta = sp.r / dr == 1 ? 1 : -1;
        Vec2 diff{delta * pp[0] - eps * sg * st.x[0], delta * pp[1] - eps * sg * st.x[1]};
        Vec2 rd = red(diff);
        if (rd[0] != 0 || rd[1] != 0) continue;
        IntMat K = Int(sg) * (power(U, k) * K0);
        EquivWitness w;
        w.K = K;
        w.delta = delta;
        w.epsilon = eps;
        Vec2 kp = K * p;
        auto coeffs = lattice_membership({delta * pp[0] - eps * kp[0], delta * pp[1] - eps * kp[1]}, s.r, shift);
        if (!coeffs) throw InternalError("decide_homotopy: orbit test and lattice membership disagree");
        w.uv = {(*coeffs)[0], (*coeffs)[1]};
        w.k3 = {(*coeffs)[2], (*coeffs)[3]};
        if (!verify_witness(s, sp, w)) throw InternalError("decide_homotopy: witness fails exact re-check");
        return Verdict::equivalent(std::move(w));
      }
    }
  }
  if (inconclusive) return Verdict::unknown("no GL(2,Z) conjugator within bound", bound);
  return Verdict::not_equivalent(s.kind == Kind::SPlus ? "translation class modulo r Z^2 + (N' - I) Z^2"
                                                       : "translation class modulo r Z^2 + (N' + I) Z^2");
}

}  // namespace detail

inline Verdict decide_homotopy_splus(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                     const SearchBounds& b = SearchBounds::from_env()) {
  if (s.kind != Kind::SPlus || sp.kind != Kind::SPlus) throw PreconditionError("decide_homotopy_splus: both surfaces must be S+");
  return detail::decide_homotopy_2x2(s, sp, b.conjugator);
}

inline Verdict decide_homotopy_sminus(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                      const SearchBounds& b = SearchBounds::from_env()) {
  if (s.kind != Kind::SMinus || sp.kind != Kind::SMinus) throw PreconditionError("decide_homotopy_sminus: both surfaces must be S-");
  return detail::decide_homotopy_2x2(s, sp, b.conjugator);
}

inline constexpr const char* kS0CriterionNote =
    "S0 criterion used: M' conjugate to M or M^-1 in GL(3,Z) (pi_1 = Z^3 x|_M Z)";

/// M' conjugate in GL(3,Z) to M or M^-1. Every verdict carries kS0CriterionNote.
inline Verdict decide_homotopy_s0(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                  const SearchBounds& b = SearchBounds::from_env()) {
  if (s.kind != Kind::S0 || sp.kind != Kind::S0) throw PreconditionError("decide_homotopy_s0: both surfaces must be S0");
  validate(s);
  validate(sp);
  auto noted = [](Verdict v) {
    v.note = kS0CriterionNote;
    return v;
  };
  bool any_poly = false, inconclusive = false;
  for (int eps : {1, -1}) {
    IntMat me = detail::matrix_power_signed(s.matrix, eps);
    if (charpoly(me) != charpoly(sp.matrix)) continue;
    any_poly = true;
    ConjugatorResult cr = me == sp.matrix ? ConjugatorResult{SearchStatus::Found, IntMat::identity(3), ""}
                                          : gl_conjugator(me, sp.matrix, std::nullopt, b.s0);
    if (cr.status == SearchStatus::Inconclusive) inconclusive = true;
    if (cr.status != SearchStatus::Found) continue;
    EquivWitness w;
    w.K = *cr.K;
    w.epsilon = eps;
    if (!verify_witness(s, sp, w)) throw InternalError("decide_homotopy_s0: witness fails exact re-check");
    return noted(Verdict::equivalent(std::move(w)));
  }
  if (!any_poly) return noted(Verdict::not_equivalent("characteristic polynomial"));
  if (inconclusive) return noted(Verdict::unknown("no GL(3,Z) conjugator within bound", b.s0));
  return noted(Verdict::not_equivalent("no rational intertwiner"));
}

inline Verdict decide_homotopy(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                               const SearchBounds& b = SearchBounds::from_env()) {
  if (s.kind != sp.kind) {
    validate(s);
    validate(sp);
    return Verdict::not_equivalent("kind");
  }
  switch (s.kind) {
    case Kind::SPlus: return decide_homotopy_splus(s, sp, b);
    case Kind::SMinus: return decide_homotopy_sminus(s, sp, b);
    case Kind::S0: return decide_homotopy_s0(s, sp, b);
  }
  throw InternalError("decide_homotopy: bad kind");
}

/// Explicit biholomorphism between the universal covers, S' -> S, intertwining the groups.
struct BiholResult {
  BiholMap map;
  GroupIsomorphism rho;
  IntMat K;
  Vec2 v2;
  Int l1, l2;
  // S+: the t' for which the map descends; it differs from S'.t when a t-deformation
  // of S' is part of the equivalence.
  QuadExt t_re, t_im;
  bool t_matches = true;
  double max_deviation = 0;
};

namespace detail {

// (x, y) relative distance used for all numeric checks of explicit maps
inline double rel_distance(const Point& x, const Point& y) {
  double scale = std::max({1.0, std::abs(x.first), std::abs(x.second)});
  return point_distance(x, y) / scale;
}

inline std::optional<Vec2> solve_integral(const IntMat& m, const Vec2& rhs) {
  Int d = det(m);
  Vec2 num{m(1, 1) * rhs[0] - m(0, 1) * rhs[1], m(0, 0) * rhs[1] - m(1, 0) * rhs[0]};
  if (num[0] % d != 0 || num[1] % d != 0) return std::nullopt;
  return Vec2{num[0] / d, num[1] / d};
}

// phi g' phi^-1 = rho(g') on the grid for the four generators of G'; returns the largest
// relative deviation.
inline double bihol_deviation(const SurfaceDescriptor& s, const SurfaceDescriptor& sp, const BiholResult& bh) {
  NumericGeometry ng = numeric_geometry(s), ngp = numeric_geometry(sp);
  if (s.kind == Kind::SPlus) ngp.t = cplx(bh.t_re.to_double(), bh.t_im.to_double());
  const GroupDescriptor& Gp = bh.rho.source();
  double dev = 0;
  for (int i = 0; i < 4; ++i) {
    GroupElem img = bh.rho(generator(Gp, i));
    for (const Point& x : sample_grid()) {
      Point pre = bh.map.inverse(x);
      Point lhs = bh.map(eval_generator(ngp, i, pre.first, pre.second));
      Point rhs = eval_group_elem(ng, img, x.first, x.second);
      dev = std::max(dev, rel_distance(lhs, rhs));
    }
  }
  return dev;
}

struct BiholContext {
  const SurfaceDescriptor& s;
  const SurfaceDescriptor& sp;
  DerivedGeometry g, gp;
  GroupDescriptor G, Gp;
};

inline BiholContext bihol_context(const SurfaceDescriptor& s, const SurfaceDescriptor& sp) {
  validate(s);
  validate(sp);
  if (s.kind != sp.kind || s.kind == Kind::S0) throw PreconditionError("biholomorphism: surfaces must share kind S+ or S-");
  if (s.r != sp.r) throw PreconditionError("biholomorphism: needs r = r'");
  return {s, sp, derive_geometry(s), derive_geometry(sp), group_of(s), group_of(sp)};
}

inline std::optional<BiholResult> bihol_for(const BiholContext& cx, const IntMat& K, const Int& l1, const Int& l2) {
  const SurfaceDescriptor& s = cx.s;
  const SurfaceDescriptor& sp = cx.sp;
  const DerivedGeometry& g = cx.g;
  const DerivedGeometry& gp = cx.gp;
  const GroupDescriptor& G = cx.G;
  const GroupDescriptor& Gp = cx.Gp;
  const int sgn = pm_sign(s.kind);
  const Int& r = s.r;

  QVec2 ka = K * g.a;
  QuadExt c = gp.a[0].is_zero() ? ka[1] / gp.a[1] : ka[0] / gp.a[0];
  if (c.sign() <= 0) return std::nullopt;
  const Int dk = det(K);
  QuadExt f = Rat(dk) * g.theta / gp.theta;
  QVec2 kb = K * g.b;
  QuadExt cf = c / f;
  if (!(cf * kb[0] == gp.b[0]) || !(cf * kb[1] == gp.b[1])) throw InternalError("bihol_for: f b' != c K b");

  const Vec2 kp = K * G.conj_lift.v2;
  const Vec2 krl = K * Vec2{-2 * r * l2, 2 * r * l1};
  Vec2 rhs{kp[0] - dk * Gp.conj_lift.v2[0] + sgn * krl[0], kp[1] - dk * Gp.conj_lift.v2[1] + sgn * krl[1]};
  auto v2 = solve_integral(signed_shift(sp.matrix, sp.kind), rhs);
  if (!v2 || !end_preserves_mu_image(GammaREnd{K, *v2}, r)) return std::nullopt;

  const Int& D = g.alpha.D();
  QuadExt ea = Rat(l1) * g.a[0] + Rat(l2) * g.a[1];
  QuadExt eb = Rat(l1) * g.b[0] + Rat(l2) * g.b[1];
  QuadExt ec = Rat(l1) * g.c_shift[0] + Rat(l2) * g.c_shift[1];
  QuadExt one = QuadExt::rational(Rat(1), D);
  // eta = mu(l1, l2, 0) has y = r l1 l2 / 2, so -(theta / r) y = -(theta / 2) l1 l2
  QuadExt half_theta_l12 = Rat(l1 * l2, 2) * g.theta;
  BiholMap m;
  m.c = c;
  m.d = -(g.alpha * ea) / (g.alpha - one);
  m.f = f;
  if (sgn > 0) {
    m.e = c * eb / (g.alpha - one);
    m.g = QuadExt::rational(Rat(0), D);
  } else {
    m.e = -(c * eb) / (g.alpha + one);
    m.g = Rat(1, 2) * (-(m.d * eb) - ec + half_theta_l12) - Rat(1, 4) * (ea * eb);
  }
  BiholResult res{m, extend_isomorphism(K, *v2, l1, l2, Gp, G), K, *v2, l1, l2, {}, {}, true, 0};
  if (sgn > 0) {
    QuadExt R = -(g.alpha / (g.alpha - one)) * ea * eb + ec + Rat(1, 2) * (ea * eb) - half_theta_l12;
    res.t_re = (R + s.t[0]) / f;
    res.t_im = QuadExt::rational(s.t[1], D) / f;
    res.t_matches = res.t_re == QuadExt::rational(sp.t[0], D) && res.t_im == QuadExt::rational(sp.t[1], D);
  }
  res.max_deviation = bihol_deviation(s, sp, res);
  if (!(res.max_deviation < 1e-9))
    throw InternalError("bihol_for: map does not intertwine the actions (deviation " + std::to_string(res.max_deviation) + ")");
  return res;
}

}  // namespace detail

/// The map (w, z) -> (c w + d, e w + f z + g) for one conjugator K (K N K^-1 = N') and
/// eta = (l1, l2), or nullopt when c <= 0 or the lift v is not admissible. A returned
/// map has been checked numerically; a failing check is an InternalError.
inline std::optional<BiholResult> bihol_for(const SurfaceDescriptor& s, const SurfaceDescriptor& sp, const IntMat& K,
                                            const Int& l1, const Int& l2) {
  auto cx = detail::bihol_context(s, sp);
  if (!is_unimodular(K) || K * s.matrix != sp.matrix * K) throw PreconditionError("bihol_for: K N K^-1 != N'");
  return detail::bihol_for(cx, K, l1, l2);
}

namespace detail {

// Conjugators +-U^k K (|k| <= 4) in turn, each with eta in shells up to the eta bound.
inline std::optional<BiholResult> build_bihol(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                              const EquivWitness& w, const SearchBounds& b) {
  auto cx = bihol_context(s, sp);
  if (w.epsilon != 1) throw PreconditionError("build_bihol: needs a witness with epsilon = 1");
  if (!is_unimodular(w.K) || w.K * s.matrix != sp.matrix * w.K) throw PreconditionError("build_bihol: K N K^-1 != N'");

  UnitGroup ug = unit_group(sp.matrix, b.conjugator);
  for (long k : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
    IntMat uk = power(ug.fundamental, k) * w.K;
    for (const IntMat& K : {uk, IntMat(-uk)}) {
      std::optional<BiholResult> found;
      for_each_coefficient(2, b.eta, [&](const std::vector<long>& eta) {
        found = bihol_for(cx, K, Int(eta[0]), Int(eta[1]));
        return found.has_value();
      });
      if (found) return found;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Biholomorphism of S+ covers for a homotopy witness with epsilon = 1 and r = r'.
/// nullopt when no (K, eta) within bounds gives a map with c > 0.
inline std::optional<BiholResult> build_bihol_splus(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                                    const EquivWitness& w, const SearchBounds& b = SearchBounds::from_env()) {
  if (s.kind != Kind::SPlus) throw PreconditionError("build_bihol_splus: expected S+ surfaces");
  return detail::build_bihol(s, sp, w, b);
}

inline std::optional<BiholResult> build_bihol_sminus(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                                     const EquivWitness& w, const SearchBounds& b = SearchBounds::from_env()) {
  if (s.kind != Kind::SMinus) throw PreconditionError("build_bihol_sminus: expected S- surfaces");
  return detail::build_bihol(s, sp, w, b);
}

/// The deformation representatives of a surface, each homotopy-equivalent to it
/// (checked exactly). S+: 16, S-: 8, S0: 2, minus exact duplicates.
inline std::vector<SurfaceDescriptor> enumerate_representatives(const SurfaceDescriptor& s) {
  validate(s);
  std::vector<SurfaceDescriptor> out;
  auto push = [&](const SurfaceDescriptor& d) {
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  };
  if (s.kind == Kind::S0) {
    push(make_s0(s.matrix, false));
    push(make_s0(s.matrix, true));
    return out;
  }
  const IntMat J{{0, 1}, {1, 0}};
  const std::vector<int> epsilons = s.kind == Kind::SPlus ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (int d : {1, -1})
    for (int delta : {1, -1})
      for (int eps : epsilons)
        for (int sg : {1, -1}) {
          IntMat K = d == 1 ? IntMat::identity(2) : J;
          IntMat nn = K * detail::matrix_power_signed(s.matrix, eps) * K;  // K = K^-1
          Int rn = Int(d * delta) * s.r;
          LatticeBasis L = r_plus_image_lattice(rn, detail::signed_shift(nn, s.kind));
          Vec2 kp = K * Vec2{s.p, s.q};
          IntVec pq = L.reduce(IntVec{delta * eps * kp[0], delta * eps * kp[1]});
          SurfaceDescriptor rep = s.kind == Kind::SPlus ? make_splus(nn, pq[0], pq[1], rn, sg)
                                                        : make_sminus(nn, pq[0], pq[1], rn, sg);
          EquivWitness w;
          w.K = K;
          w.delta = delta;
          w.epsilon = eps;
          Vec2 diff{delta * pq[0] - eps * kp[0], delta * pq[1] - eps * kp[1]};
          auto coeffs = lattice_membership(diff, s.r, detail::signed_shift(nn, s.kind));
          if (!coeffs) throw InternalError("enumerate_representatives: translation not in the lattice");
          w.uv = {(*coeffs)[0], (*coeffs)[1]};
          w.k3 = {(*coeffs)[2], (*coeffs)[3]};
          if (!verify_witness(s, rep, w)) throw InternalError("enumerate_representatives: representative is not homotopy-equivalent");
          push(rep);
        }
  return out;
}

enum class DeformationOutcome { SameClass, CandidatePair, Distinct, Undetermined };

inline std::string to_string(DeformationOutcome o) {
  switch (o) {
    case DeformationOutcome::SameClass: return "same-class";
    case DeformationOutcome::CandidatePair: return "candidate-pair";
    case DeformationOutcome::Distinct: return "distinct";
    case DeformationOutcome::Undetermined: return "undetermined";
  }
  return "?";
}

struct DeformationVerdict {
  DeformationOutcome outcome = DeformationOutcome::Undetermined;
  Verdict homotopy;
  std::vector<std::string> chain;  // certificate steps (SameClass) or the reason otherwise
  std::optional<BiholResult> bihol;
};

/// Same deformation class, a two-element ambiguity, or different homotopy types.
/// SameClass is only reported with a verified chain of steps.
inline DeformationVerdict deformation_class(const SurfaceDescriptor& s, const SurfaceDescriptor& sp,
                                            const SearchBounds& b = SearchBounds::from_env()) {
  DeformationVerdict out;
  out.homotopy = decide_homotopy(s, sp, b);
  if (out.homotopy.kind == VerdictKind::NotEquivalent) {
    out.outcome = DeformationOutcome::Distinct;
    out.chain.push_back("homotopy types differ: " + out.homotopy.obstruction);
    return out;
  }
  if (out.homotopy.kind == VerdictKind::Unknown) {
    out.chain.push_back("homotopy undecided: " + out.homotopy.obstruction);
    return out;
  }

  auto cs = canonicalize(s).first, csp = canonicalize(sp).first;
  auto note_canonical = [&](const SurfaceDescriptor& x, const char* who) {
    if (x.t[0] != 0 || x.t[1] != 0) out.chain.push_back(std::string("t-deformation of ") + who + " to t = 0");
    if (x.a_scale != 1 || x.b_scale != 1) out.chain.push_back(std::string("rescale eigenvectors of ") + who);
  };

  if (s.kind == Kind::S0) {
    if (cs == csp) {
      note_canonical(s, "S");
      note_canonical(sp, "S'");
      out.outcome = DeformationOutcome::SameClass;
      if (out.chain.empty()) out.chain.push_back("identical");
    } else {
      out.outcome = DeformationOutcome::CandidatePair;
      out.chain.push_back("homotopy-equivalent S0 surfaces; S' is biholomorphic to S or to its conjugate");
    }
    return out;
  }

  if (cs == csp) {
    note_canonical(s, "S");
    note_canonical(sp, "S'");
    if (out.chain.empty()) out.chain.push_back("identical");
    out.outcome = DeformationOutcome::SameClass;
    return out;
  }

  // (p, q, r) -> (-p, -q, -r) replaces g3 by its inverse and leaves the group unchanged
  SurfaceDescriptor target = sp;
  if (sp.r != s.r) {
    target.p = -sp.p;
    target.q = -sp.q;
    target.r = -sp.r;
    out.chain.push_back("S' = (N', -p', -q', -r'): same subgroup of Aut(H x C)");
  }
  Verdict v = decide_homotopy(s, target, b);
  if (v.kind != VerdictKind::Equivalent || !v.witness || v.witness->epsilon != 1) {
    out.outcome = DeformationOutcome::Undetermined;
    out.chain.push_back("only an orientation-reversing (epsilon = -1) homotopy equivalence; no biholomorphism construction");
    return out;
  }
  auto bh = detail::build_bihol(s, target, *v.witness, b);
  if (bh) {
    if (!bh->t_matches) out.chain.push_back("t-deformation of S' to t' = " + bh->t_re.str() + " + (" + bh->t_im.str() + ")i");
    out.chain.push_back("biholomorphism (w, z) -> (c w + d, e w + f z + g) with K = " + bh->K.str() + ", eta = (" +
                        bh->l1.str() + ", " + bh->l2.str() + ")");
    out.outcome = DeformationOutcome::SameClass;
    out.bihol = std::move(bh);
    return out;
  }
  SurfaceDescriptor flipped = target;
  flipped.sign = -flipped.sign;
  Verdict vf = decide_homotopy(s, flipped, b);
  if (vf.kind == VerdictKind::Equivalent && vf.witness && vf.witness->epsilon == 1) {
    auto bf = detail::build_bihol(s, flipped, *vf.witness, b);
    if (bf) {
      out.chain.push_back("S is biholomorphic to S' with a replaced by -a; S' itself not reached");
      out.outcome = DeformationOutcome::CandidatePair;
      out.bihol = std::move(bf);
      return out;
    }
  }
  out.chain.push_back("no biholomorphism within eta bound " + std::to_string(b.eta) + "; S ~ S' or S ~ S' with -a");
  out.outcome = DeformationOutcome::CandidatePair;
  return out;
}

}  // namespace inoue
