#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "inoue/gamma_r.hpp"
#include "inoue/kind.hpp"

namespace inoue {

/// Presentation data of G_M (S0) or G+-_{N,p,q,r}. For S+ / S- the conjugation
/// gamma -> g0 gamma g0^-1 acts on the mu-image through conj_lift = (N, p~).
struct GroupDescriptor {
  Kind kind = Kind::SPlus;
  IntMat matrix;
  Int p = 0, q = 0, r = 1;
  GammaREnd conj_lift;
  GammaREnd conj_lift_inv;
  IntMat matrix_inv;
};

inline GroupDescriptor make_group(Kind kind, const IntMat& matrix, const Int& p = 0, const Int& q = 0, const Int& r = 1) {
  GroupDescriptor g;
  g.kind = kind;
  g.matrix = matrix;
  if (kind == Kind::S0) {
    if (matrix.rows() != 3 || matrix.cols() != 3) throw PreconditionError("make_group: S0 needs a 3x3 matrix");
    g.matrix_inv = inverse_unimodular(matrix);
    return g;
  }
  if (matrix.rows() != 2 || matrix.cols() != 2) throw PreconditionError("make_group: S+/S- need a 2x2 matrix");
  if (r == 0) throw PreconditionError("make_group: r must be nonzero");
  Int d = det(matrix);
  if (kind == Kind::SPlus && d != 1) throw PreconditionError("make_group: S+ needs det N = 1");
  if (kind == Kind::SMinus && d != -1) throw PreconditionError("make_group: S- needs det N = -1");
  g.p = p;
  g.q = q;
  g.r = r;
  g.matrix_inv = inverse_unimodular(matrix);
  g.conj_lift = lift_hom(matrix(0, 0), matrix(0, 1), p, matrix(1, 0), matrix(1, 1), q, r);
  g.conj_lift_inv = end_inverse(g.conj_lift);
  return g;
}

/// Normal form g0^n0 * gamma. gamma is a mu-image element of Gamma_r (S+ / S-),
/// lat = (l1, l2, l3) stands for g1^l1 g2^l2 g3^l3 (S0).
struct GroupElem {
  Int n0 = 0;
  GammaRElem gamma;
  std::array<Int, 3> lat{0, 0, 0};

  friend bool operator==(const GroupElem& a, const GroupElem& b) {
    return a.n0 == b.n0 && a.gamma == b.gamma && a.lat == b.lat;
  }
  std::string str() const {
    return "(" + n0.str() + ", " + gamma.str() + ", [" + lat[0].str() + "," + lat[1].str() + "," + lat[2].str() + "])";
  }
};

namespace detail {

inline long long small_exponent(const Int& e) {
  if (!fits_int64(e) || abs(e) > Int(1000000)) throw PreconditionError("g0-exponent too large for explicit conjugation");
  return e.convert_to<long long>();
}

inline void check_member(const GroupElem& a, const GroupDescriptor& G) {
  if (G.kind == Kind::S0) {
    if (a.gamma.zeta != Vec2{0, 0} || a.gamma.y2 != 0) throw PreconditionError("g_mul: element does not belong to an S0 group");
  } else if (a.gamma.r != G.r) {
    throw PreconditionError("g_mul: element belongs to a different group (r mismatch)");
  }
}

// A^k (gamma), A the g0-conjugation.
inline GammaRElem conj_power(const GroupDescriptor& G, GammaRElem g, long long k) {
  const GammaREnd& step = k >= 0 ? G.conj_lift : G.conj_lift_inv;
  for (long long i = 0; i < (k >= 0 ? k : -k); ++i) g = end_apply(step, g);
  return g;
}

inline std::array<Int, 3> lat_times(const std::array<Int, 3>& l, const IntMat& m) {
  std::array<Int, 3> out{0, 0, 0};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) out[j] += l[i] * m(i, j);
  return out;
}

inline std::array<Int, 3> lat_conj_power(const GroupDescriptor& G, std::array<Int, 3> l, long long k) {
  const IntMat& step = k >= 0 ? G.matrix : G.matrix_inv;
  for (long long i = 0; i < (k >= 0 ? k : -k); ++i) l = lat_times(l, step);
  return l;
}

}  // namespace detail

inline GroupElem g_identity(const GroupDescriptor& G) {
  GroupElem e;
  e.gamma = gr_identity(G.kind == Kind::S0 ? Int(1) : G.r);
  if (G.kind == Kind::S0) e.gamma.y2 = 0;
  return e;
}

/// (m, gamma)(m', gamma') = (m + m', A^{-m'}(gamma) gamma').
inline GroupElem g_mul(const GroupElem& a, const GroupElem& b, const GroupDescriptor& G) {
  detail::check_member(a, G);
  detail::check_member(b, G);
  GroupElem out;
  out.n0 = a.n0 + b.n0;
  long long k = -detail::small_exponent(b.n0);
  if (G.kind == Kind::S0) {
    out.gamma = a.gamma;
    auto l = detail::lat_conj_power(G, a.lat, k);
    for (std::size_t i = 0; i < 3; ++i) out.lat[i] = l[i] + b.lat[i];
  } else {
    out.gamma = gr_mul(detail::conj_power(G, a.gamma, k), b.gamma);
  }
  return out;
}

/// (m, gamma)^-1 = (-m, A^m(gamma^-1)).
inline GroupElem g_inv(const GroupElem& a, const GroupDescriptor& G) {
  detail::check_member(a, G);
  GroupElem out;
  out.n0 = -a.n0;
  long long k = detail::small_exponent(a.n0);
  if (G.kind == Kind::S0) {
    out.gamma = a.gamma;
    out.lat = detail::lat_conj_power(G, {-a.lat[0], -a.lat[1], -a.lat[2]}, k);
  } else {
    out.gamma = detail::conj_power(G, gr_inv(a.gamma), k);
  }
  return out;
}

inline GroupElem g_pow(const GroupElem& a, Int e, const GroupDescriptor& G) {
  GroupElem base = e < 0 ? g_inv(a, G) : a;
  if (e < 0) e = -e;
  GroupElem acc = g_identity(G);
  while (e > 0) {
    if (e % 2 == 1) acc = g_mul(acc, base, G);
    e /= 2;
    if (e > 0) base = g_mul(base, base, G);
  }
  return acc;
}

/// Generator g_i, i in 0..3.
inline GroupElem generator(const GroupDescriptor& G, int i) {
  GroupElem e = g_identity(G);
  switch (i) {
    case 0: e.n0 = 1; break;
    case 1: case 2: case 3:
      if (G.kind == Kind::S0) e.lat[static_cast<std::size_t>(i - 1)] = 1;
      else e.gamma = mu_embed(i == 1, i == 2, i == 3, G.r);
      break;
    default: throw PreconditionError("generator index must be 0..3");
  }
  return e;
}

/// Group element with only a gamma part, gamma = mu(l1, l2, l3) (or g1^l1 g2^l2 g3^l3 for S0).
inline GroupElem gamma_elem(const GroupDescriptor& G, const Int& l1, const Int& l2, const Int& l3) {
  GroupElem e = g_identity(G);
  if (G.kind == Kind::S0) e.lat = {l1, l2, l3};
  else e.gamma = mu_embed(l1, l2, l3, G.r);
  return e;
}

using Word = std::vector<std::pair<int, long long>>;

inline GroupElem word_to_normal_form(const Word& word, const GroupDescriptor& G) {
  GroupElem acc = g_identity(G);
  for (const auto& [gen, e] : word) {
    if (gen < 0 || gen > 3) throw PreconditionError("word_to_normal_form: generator index must be 0..3");
    acc = g_mul(acc, g_pow(generator(G, gen), e, G), G);
  }
  return acc;
}

inline Word inverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  for (auto& [g, e] : w) e = -e;
  return w;
}

struct Relation {
  std::string name;
  Word lhs;
  Word rhs;
};

struct RelationResult {
  std::string name;
  bool passed = false;
};

inline std::vector<Relation> defining_relations(const GroupDescriptor& G) {
  auto ll = [](const Int& x) { return detail::small_exponent(x); };
  const IntMat& m = G.matrix;
  std::vector<Relation> rels;
  if (G.kind == Kind::S0) {
    for (int i = 1; i <= 3; ++i) {
      auto row = static_cast<std::size_t>(i - 1);
      rels.push_back({"g0 g" + std::to_string(i) + " g0^-1 = g1^m" + std::to_string(i) + "1 g2^m" + std::to_string(i) +
                          "2 g3^m" + std::to_string(i) + "3",
                      {{0, 1}, {i, 1}, {0, -1}},
                      {{1, ll(m(row, 0))}, {2, ll(m(row, 1))}, {3, ll(m(row, 2))}}});
    }
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j)
        rels.push_back({"g" + std::to_string(i) + " g" + std::to_string(j) + " = g" + std::to_string(j) + " g" + std::to_string(i),
                        {{i, 1}, {j, 1}}, {{j, 1}, {i, 1}}});
    return rels;
  }
  rels.push_back({"g0 g1 g0^-1 = g1^n11 g2^n12 g3^p", {{0, 1}, {1, 1}, {0, -1}}, {{1, ll(m(0, 0))}, {2, ll(m(0, 1))}, {3, ll(G.p)}}});
  rels.push_back({"g0 g2 g0^-1 = g1^n21 g2^n22 g3^q", {{0, 1}, {2, 1}, {0, -1}}, {{1, ll(m(1, 0))}, {2, ll(m(1, 1))}, {3, ll(G.q)}}});
  rels.push_back({"g1 g2 g1^-1 g2^-1 = g3^r", {{1, 1}, {2, 1}, {1, -1}, {2, -1}}, {{3, ll(G.r)}}});
  if (G.kind == Kind::SPlus) rels.push_back({"g0 g3 = g3 g0", {{0, 1}, {3, 1}}, {{3, 1}, {0, 1}}});
  else rels.push_back({"g0 g3 g0^-1 = g3^-1", {{0, 1}, {3, 1}, {0, -1}}, {{3, -1}}});
  rels.push_back({"g1 g3 = g3 g1", {{1, 1}, {3, 1}}, {{3, 1}, {1, 1}}});
  rels.push_back({"g2 g3 = g3 g2", {{2, 1}, {3, 1}}, {{3, 1}, {2, 1}}});
  return rels;
}

/// Evaluates every defining relation through the normal-form arithmetic.
inline std::vector<RelationResult> relation_check(const GroupDescriptor& G) {
  std::vector<RelationResult> out;
  for (const auto& rel : defining_relations(G))
    out.push_back({rel.name, word_to_normal_form(rel.lhs, G) == word_to_normal_form(rel.rhs, G)});
  return out;
}

inline bool all_passed(const std::vector<RelationResult>& report) {
  return std::all_of(report.begin(), report.end(), [](const RelationResult& r) { return r.passed; });
}

enum class CenterClass { Trivial, InfiniteCyclic };

inline std::string to_string(CenterClass c) { return c == CenterClass::Trivial ? "trivial" : "infinite-cyclic"; }

struct Fingerprint {
  CenterClass center = CenterClass::Trivial;
  bool gamma_abelian = false;
  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.center == b.center && a.gamma_abelian == b.gamma_abelian;
  }
};

inline bool commutes(const GroupElem& a, const GroupElem& b, const GroupDescriptor& G) {
  return g_mul(a, b, G) == g_mul(b, a, G);
}

/// Center class and commutativity of Gamma. Only the candidates g3 and the gamma
/// generators are tested for centrality.
inline Fingerprint fingerprint(const GroupDescriptor& G) {
  std::array<GroupElem, 4> gens{generator(G, 0), generator(G, 1), generator(G, 2), generator(G, 3)};
  Fingerprint fp;
  for (int c : {3, 1, 2}) {
    bool central = true;
    for (const auto& g : gens) central = central && commutes(gens[static_cast<std::size_t>(c)], g, G);
    if (central) {
      fp.center = CenterClass::InfiniteCyclic;
      break;
    }
  }
  fp.gamma_abelian = commutes(gens[1], gens[2], G);
  return fp;
}

/// The isomorphism rho: G' -> G, g0'^m gamma -> (g0 eta)^m phi(gamma), eta = g1^l1 g2^l2,
/// phi the automorphism of Gamma_r with lift (K, v).
class GroupIsomorphism {
 public:
  GroupIsomorphism(GroupDescriptor src, GroupDescriptor dst, GammaREnd phi, Int l1, Int l2)
      : src_(std::move(src)), dst_(std::move(dst)), phi_(std::move(phi)), phi_inv_(end_inverse(phi_)), l1_(std::move(l1)), l2_(std::move(l2)) {
    GroupElem eta = gamma_elem(dst_, l1_, l2_, 0);
    image_g0_ = g_mul(generator(dst_, 0), eta, dst_);
    // rho(g0') = g0 eta, so g0 = rho(g0') eta^-1 and rho^-1(g0) = g0' phi^-1(eta^-1)
    GroupElem pre = g_identity(src_);
    pre.gamma = end_apply(phi_inv_, g_inv(eta, dst_).gamma);
    preimage_g0_ = g_mul(generator(src_, 0), pre, src_);
  }

  const GroupDescriptor& source() const noexcept { return src_; }
  const GroupDescriptor& target() const noexcept { return dst_; }
  const GammaREnd& lift() const noexcept { return phi_; }
  const Int& l1() const noexcept { return l1_; }
  const Int& l2() const noexcept { return l2_; }

  GroupElem operator()(const GroupElem& a) const {
    GroupElem g = g_identity(dst_);
    g.gamma = end_apply(phi_, a.gamma);
    return g_mul(g_pow(image_g0_, a.n0, dst_), g, dst_);
  }

  GroupElem inverse(const GroupElem& a) const {
    GroupElem g = g_identity(src_);
    g.gamma = end_apply(phi_inv_, a.gamma);
    return g_mul(g_pow(preimage_g0_, a.n0, src_), g, src_);
  }

 private:
  GroupDescriptor src_, dst_;
  GammaREnd phi_, phi_inv_;
  Int l1_, l2_;
  GroupElem image_g0_, preimage_g0_;
};

/// Checks the conditions under which (K, v, l1, l2) extends to an isomorphism G' -> G:
///   K N = N' K,  (N' -+ I) v = K p~ - det(K) p~' +- K r (-l2, l1)^T,  v_i - (r/2) k_i1 k_i2 in Z,
/// upper signs for S+, lower for S-. Returns the violated condition, or an empty string.
inline std::string isomorphism_condition_violation(const IntMat& K, const Vec2& v2, const Int& l1, const Int& l2,
                                                   const GroupDescriptor& Gp, const GroupDescriptor& G) {
  if (G.kind == Kind::S0 || Gp.kind != G.kind) return "both groups must be of the same kind S+ or S-";
  if (G.r != Gp.r) return "r = r'";
  if (K.rows() != 2 || K.cols() != 2 || !is_unimodular(K)) return "K in GL(2,Z)";
  if (K * G.matrix != Gp.matrix * K) return "K N = N' K";
  const int s = G.kind == Kind::SPlus ? 1 : -1;
  IntMat shift = Gp.matrix - Int(s) * IntMat::identity(2);
  Vec2 lhs = shift * v2;
  Vec2 kp = K * G.conj_lift.v2;
  Vec2 krl = K * Vec2{-2 * G.r * l2, 2 * G.r * l1};
  Int dk = det(K);
  Vec2 rhs{kp[0] - dk * Gp.conj_lift.v2[0] + s * krl[0], kp[1] - dk * Gp.conj_lift.v2[1] + s * krl[1]};
  if (lhs != rhs) return s > 0 ? "(N' - I) v = K p - det(K) p' + K r (-l2, l1)" : "(N' + I) v = K p - det(K) p' - K r (-l2, l1)";
  if (!end_preserves_mu_image(GammaREnd{K, v2}, G.r)) return "v_i - (r/2) k_i1 k_i2 in Z";
  return {};
}

inline GroupIsomorphism extend_isomorphism(const IntMat& K, const Vec2& v2, const Int& l1, const Int& l2,
                                           const GroupDescriptor& Gp, const GroupDescriptor& G) {
  std::string bad = isomorphism_condition_violation(K, v2, l1, l2, Gp, G);
  if (!bad.empty()) throw PreconditionError("extend_isomorphism: violated condition " + bad);
  return GroupIsomorphism(Gp, G, GammaREnd{K, v2}, l1, l2);
}

}  // namespace inoue
