#include <gtest/gtest.h>

#include <random>

#include "inoue/gamma_r.hpp"

using namespace inoue;

namespace {

GammaRElem random_elem(std::mt19937& rng, const Int& r) {
  std::uniform_int_distribution<int> d(-6, 6);
  GammaRElem g{{d(rng), d(rng)}, d(rng), r};
  if (r % 2 == 0 && !is_even(g.y2)) g.y2 += 1;
  return g;
}

GammaREnd random_end(std::mt19937& rng, const Int& r) {
  std::uniform_int_distribution<int> d(-3, 3);
  return lift_hom(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng), r);
}

}  // namespace

TEST(GammaR, LawOnBasisVectors) {
  for (int r : {1, 2, -3}) {
    GammaRElem g = gr_mul({{1, 0}, 0, r}, {{0, 1}, 0, r});
    EXPECT_EQ(g, (GammaRElem{{1, 1}, r, r}));  // y = r/2
  }
}

TEST(GammaR, IdentityAndInverse) {
  GammaRElem g{{3, -2}, 5, 3};
  EXPECT_EQ(gr_mul(gr_identity(3), g), g);
  EXPECT_EQ(gr_mul(g, gr_inv(g)), gr_identity(3));
  EXPECT_EQ(gr_inv(gr_identity(3)), gr_identity(3));
  EXPECT_EQ(gr_inv(GammaRElem{{1, 0}, 0, 1}), (GammaRElem{{-1, 0}, 0, 1}));
  GammaRElem h{{1, 1}, 2, 2};
  EXPECT_EQ(gr_mul(h, gr_inv(h)), gr_identity(2));
  EXPECT_EQ(gr_mul(gr_inv(h), h), gr_identity(2));
}

TEST(GammaR, MismatchedRRejected) {
  EXPECT_THROW(gr_mul(gr_identity(1), gr_identity(2)), PreconditionError);
}

TEST(GammaR, MuFormula) {
  const Int r = 3;
  EXPECT_EQ(mu_embed(1, 0, 0, r), (GammaRElem{{1, 0}, 0, r}));
  EXPECT_EQ(mu_embed(0, 0, 1, r), (GammaRElem{{0, 0}, 2, r}));
  EXPECT_EQ(mu_embed(1, 1, 1, r), (GammaRElem{{1, 1}, 2 + r, r}));
}

TEST(GammaR, MuImageTest) {
  EXPECT_TRUE(mu_image_test(GammaRElem{{1, 1}, 3, 3}));
  EXPECT_FALSE(mu_image_test(GammaRElem{{0, 0}, 1, 3}));
  EXPECT_TRUE(mu_image_test(gr_identity(5)));
}

TEST(GammaR, CommutatorOfGeneratorsIsG3ToTheR) {
  for (int r : {1, 2, -2, 5}) {
    GammaRElem g1 = mu_embed(1, 0, 0, r), g2 = mu_embed(0, 1, 0, r);
    GammaRElem comm = gr_mul(gr_mul(g1, g2), gr_inv(gr_mul(g2, g1)));
    EXPECT_EQ(comm, (GammaRElem{{0, 0}, 2 * r, r}));
    EXPECT_EQ(comm, gr_pow(mu_embed(0, 0, 1, r), r));
  }
}

TEST(GammaR, EndApplyExamples) {
  const Int r = 1;
  GammaRElem g3 = mu_embed(0, 0, 1, r);
  EXPECT_EQ(end_apply(GammaREnd{}, GammaRElem{{2, -1}, 3, r}), (GammaRElem{{2, -1}, 3, r}));
  GammaREnd conj = lift_hom(2, 1, 0, 1, 1, 0, r);
  EXPECT_EQ(end_apply(conj, g3), g3);
  GammaREnd flip{IntMat{{0, 1}, {1, 0}}, {0, 0}};
  EXPECT_EQ(end_apply(flip, g3), gr_inv(g3));
}

TEST(GammaR, ComposeWithIdentityAndTranslations) {
  std::mt19937 rng(1);
  GammaREnd phi = random_end(rng, 3);
  EXPECT_EQ(end_compose(phi, GammaREnd{}), phi);
  EXPECT_EQ(end_compose(GammaREnd{}, phi), phi);
  GammaREnd a{IntMat::identity(2), {3, -1}}, b{IntMat::identity(2), {5, 7}};
  EXPECT_EQ(end_compose(a, b), (GammaREnd{IntMat::identity(2), {8, 6}}));
}

TEST(GammaR, LiftHomExamples) {
  EXPECT_EQ(lift_hom(1, 0, 0, 0, 1, 0, 5), GammaREnd{});
  // conjugation lift (N, p~) with p~ = (p + (r/2) n11 n12, q + (r/2) n21 n22)
  GammaREnd c = lift_hom(2, 1, 4, 1, 1, -3, 3);
  EXPECT_EQ(c.K, (IntMat{{2, 1}, {1, 1}}));
  EXPECT_EQ(c.v2, (Vec2{2 * 4 + 3 * 2, 2 * -3 + 3 * 1}));
  EXPECT_EQ(lift_hom(0, 1, 0, 1, 0, 0, 7), (GammaREnd{IntMat{{0, 1}, {1, 0}}, {0, 0}}));
  std::mt19937 rng(2);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(end_preserves_mu_image(random_end(rng, 1 + i % 4), 1 + i % 4));
}

TEST(GammaR, LiftHomSendsGeneratorsAsPrescribed) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 200; ++it) {
    int r = 1 + it % 4;
    int k[6];
    for (int& x : k) x = d(rng);
    GammaREnd phi = lift_hom(k[0], k[1], k[2], k[3], k[4], k[5], r);
    ASSERT_EQ(end_apply(phi, mu_embed(1, 0, 0, r)), mu_embed(k[0], k[1], k[2], r));
    ASSERT_EQ(end_apply(phi, mu_embed(0, 1, 0, r)), mu_embed(k[3], k[4], k[5], r));
  }
}

TEST(GammaRProperty, Associativity) {
  std::mt19937 rng(10);
  for (int it = 0; it < 1000; ++it) {
    Int r = 1 + it % 5;
    GammaRElem a = random_elem(rng, r), b = random_elem(rng, r), c = random_elem(rng, r);
    ASSERT_EQ(gr_mul(gr_mul(a, b), c), gr_mul(a, gr_mul(b, c)));
  }
}

TEST(GammaRProperty, MuIsHomomorphismOnGeneratorWords) {
  // mu(g1^a g2^b g3^c) * mu(g1^a' g2^b' g3^c') has the collected form
  // g1^(a+a') g2^(b+b') g3^(c+c' - r a' b) obtained from g2 g1 = g1 g2 g3^-r
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 1000; ++it) {
    int r = (it % 2 ? 1 : -1) * (1 + it % 4);
    int a = d(rng), b = d(rng), c = d(rng), a2 = d(rng), b2 = d(rng), c2 = d(rng);
    ASSERT_EQ(gr_mul(mu_embed(a, b, c, r), mu_embed(a2, b2, c2, r)), mu_embed(a + a2, b + b2, c + c2 - r * a2 * b, r));
  }
}

TEST(GammaRProperty, MuImageIsSubgroup) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 1000; ++it) {
    int r = 1 + it % 4;
    GammaRElem a = mu_embed(d(rng), d(rng), d(rng), r), b = mu_embed(d(rng), d(rng), d(rng), r);
    ASSERT_TRUE(mu_image_test(gr_mul(a, b)));
    ASSERT_TRUE(mu_image_test(gr_inv(a)));
    auto l = mu_coords(a);
    ASSERT_EQ(mu_embed(l[0], l[1], l[2], r), a);
  }
}

TEST(GammaRProperty, EndApplyIsHomomorphism) {
  std::mt19937 rng(13);
  for (int it = 0; it < 1000; ++it) {
    Int r = 1 + it % 4;
    GammaREnd phi = random_end(rng, r);
    GammaRElem a = random_elem(rng, r), b = random_elem(rng, r);
    ASSERT_EQ(end_apply(phi, gr_mul(a, b)), gr_mul(end_apply(phi, a), end_apply(phi, b)));
  }
}

TEST(GammaRProperty, CompositionIsReversedSemigroupProduct) {
  // (K1, v1)(K2, v2) = (K1 K2, K1 v2 + det(K2) v1) as an independent product,
  // and end_compose(phi, psi) must equal the product (K_psi, v_psi)(K_phi, v_phi)
  auto product = [](const GammaREnd& x, const GammaREnd& y) {
    Vec2 kv = x.K * y.v2;
    Int d = det(y.K);
    return GammaREnd{x.K * y.K, {kv[0] + d * x.v2[0], kv[1] + d * x.v2[1]}};
  };
  std::mt19937 rng(14);
  for (int it = 0; it < 1000; ++it) {
    Int r = 1 + it % 4;
    GammaREnd phi = random_end(rng, r), psi = random_end(rng, r);
    GammaRElem g = random_elem(rng, r);
    GammaREnd comp = end_compose(phi, psi);
    ASSERT_EQ(end_apply(comp, g), end_apply(phi, end_apply(psi, g)));
    ASSERT_EQ(comp, product(psi, phi));
  }
}

TEST(GammaRProperty, InverseOfUnimodularLift) {
  std::mt19937 rng(15);
  const IntMat units[] = {IntMat{{2, 1}, {1, 1}}, IntMat{{0, 1}, {1, 0}}, IntMat{{1, 2}, {0, 1}}, IntMat{{2, 1}, {1, 0}}};
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 200; ++it) {
    int r = 1 + it % 4;
    const IntMat& k = units[it % 4];
    GammaREnd phi = lift_hom(k(0, 0), k(0, 1), d(rng), k(1, 0), k(1, 1), d(rng), r);
    GammaREnd inv = end_inverse(phi);
    GammaRElem g = random_elem(rng, r);
    ASSERT_EQ(end_apply(inv, end_apply(phi, g)), g);
    ASSERT_EQ(end_apply(phi, end_apply(inv, g)), g);
    ASSERT_TRUE(end_preserves_mu_image(inv, r));
  }
}
