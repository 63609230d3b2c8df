#pragma once

#include <string>

#include "inoue/int_matrix.hpp"

namespace inoue {

/// Element (zeta, y) of Gamma_r = Z^2 x Z[r/2] with the twisted law
///   (zeta, y)(zeta', y') = (zeta + zeta', y + y' + (r/2) det(zeta, zeta')).
/// y is stored doubled (y2 = 2y) so that half-integers stay exact.
struct GammaRElem {
  Vec2 zeta{0, 0};
  Int y2 = 0;
  Int r = 1;

  friend bool operator==(const GammaRElem& a, const GammaRElem& b) {
    return a.zeta == b.zeta && a.y2 == b.y2 && a.r == b.r;
  }
  std::string str() const {
    return "((" + zeta[0].str() + "," + zeta[1].str() + ")," + y2.str() + "/2)";
  }
};

/// Endomorphism (zeta, y) -> (zeta K, zeta v + det(K) y), with v stored doubled.
struct GammaREnd {
  IntMat K = IntMat::identity(2);
  Vec2 v2{0, 0};

  friend bool operator==(const GammaREnd& a, const GammaREnd& b) { return a.K == b.K && a.v2 == b.v2; }
};

/// y must lie in Z when r is even.
inline bool gr_valid(const GammaRElem& g) { return g.r != 0 && (g.r % 2 != 0 || is_even(g.y2)); }

inline GammaRElem gr_identity(const Int& r) { return GammaRElem{{0, 0}, 0, r}; }

inline GammaRElem gr_mul(const GammaRElem& g, const GammaRElem& h) {
  if (g.r != h.r) throw PreconditionError("gr_mul: elements of different groups (r " + g.r.str() + " vs " + h.r.str() + ")");
  return GammaRElem{{g.zeta[0] + h.zeta[0], g.zeta[1] + h.zeta[1]}, g.y2 + h.y2 + g.r * det2(g.zeta, h.zeta), g.r};
}

inline GammaRElem gr_inv(const GammaRElem& g) { return GammaRElem{{-g.zeta[0], -g.zeta[1]}, -g.y2, g.r}; }

inline GammaRElem gr_pow(GammaRElem g, long long e) {
  // (zeta, y)^k = (k zeta, k y): det(zeta, zeta) = 0
  return GammaRElem{{g.zeta[0] * e, g.zeta[1] * e}, g.y2 * e, g.r};
}

/// g1^l1 g2^l2 g3^l3 -> ((l1, l2), l3 + l1 l2 r / 2).
inline GammaRElem mu_embed(const Int& l1, const Int& l2, const Int& l3, const Int& r) {
  return GammaRElem{{l1, l2}, 2 * l3 + r * l1 * l2, r};
}

/// True iff y - (r/2) zeta1 zeta2 is an integer, i.e. g lies in the image of mu.
inline bool mu_image_test(const GammaRElem& g) { return is_even(g.y2 - g.r * g.zeta[0] * g.zeta[1]); }

/// Exponents (l1, l2, l3) with mu(l1, l2, l3) = g; g must pass mu_image_test.
inline std::array<Int, 3> mu_coords(const GammaRElem& g) {
  if (!mu_image_test(g)) throw PreconditionError("mu_coords: element is not in the image of mu");
  return {g.zeta[0], g.zeta[1], (g.y2 - g.r * g.zeta[0] * g.zeta[1]) / 2};
}

inline GammaRElem end_apply(const GammaREnd& phi, const GammaRElem& g) {
  return GammaRElem{row_times(g.zeta, phi.K), dot(g.zeta, phi.v2) + det(phi.K) * g.y2, g.r};
}

/// phi o psi (psi applied first). As pairs this is the semigroup product
/// (K_psi, v_psi)(K_phi, v_phi) = (K_psi K_phi, K_psi v_phi + det(K_phi) v_psi).
inline GammaREnd end_compose(const GammaREnd& phi, const GammaREnd& psi) {
  Vec2 kv = psi.K * phi.v2;
  Int d = det(phi.K);
  return GammaREnd{psi.K * phi.K, {kv[0] + d * psi.v2[0], kv[1] + d * psi.v2[1]}};
}

/// Inverse automorphism (K^-1, -det(K^-1) K^-1 v); K must be unimodular.
inline GammaREnd end_inverse(const GammaREnd& phi) {
  IntMat ki = inverse_unimodular(phi.K);
  Vec2 w = ki * phi.v2;
  Int d = det(ki);
  GammaREnd inv{ki, {-d * w[0], -d * w[1]}};
  if (!(end_compose(inv, phi) == GammaREnd{})) throw InternalError("end_inverse: composition is not the identity");
  return inv;
}

inline GammaREnd end_power(const GammaREnd& phi, long long e) {
  GammaREnd base = e < 0 ? end_inverse(phi) : phi;
  GammaREnd acc;
  for (long long k = e < 0 ? -e : e; k > 0; --k) acc = end_compose(base, acc);
  return acc;
}

/// The unique endomorphism of Gamma_r lifting
///   g1 -> g1^k11 g2^k12 g3^k13,  g2 -> g1^k21 g2^k22 g3^k23.
inline GammaREnd lift_hom(const Int& k11, const Int& k12, const Int& k13, const Int& k21, const Int& k22,
                          const Int& k23, const Int& r) {
  IntMat K(2, 2);
  K(0, 0) = k11;
  K(0, 1) = k12;
  K(1, 0) = k21;
  K(1, 1) = k22;
  return GammaREnd{K, {2 * k13 + r * k11 * k12, 2 * k23 + r * k21 * k22}};
}

/// The endomorphism maps the image of mu into itself iff v_i - (r/2) k_i1 k_i2 is an integer.
inline bool end_preserves_mu_image(const GammaREnd& phi, const Int& r) {
  return is_even(phi.v2[0] - r * phi.K(0, 0) * phi.K(0, 1)) && is_even(phi.v2[1] - r * phi.K(1, 0) * phi.K(1, 1));
}

}  // namespace inoue
