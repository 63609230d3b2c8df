#include <gtest/gtest.h>

#include <random>

#include "inoue/fundamental_groups.hpp"

using namespace inoue;

namespace {

const IntMat kN{{2, 1}, {1, 1}};
const IntMat kNm{{2, 1}, {1, 0}};
const IntMat kM{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};

Word random_word(std::mt19937& rng, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    int g = static_cast<int>(rng() % 4);
    long long e = g == 0 ? static_cast<long long>(rng() % 3) - 1 : static_cast<long long>(rng() % 5) - 2;
    w.push_back({g, e});
  }
  return w;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<GroupDescriptor> sample_groups() {
  return {make_group(Kind::SPlus, kN, 0, 0, 1),     make_group(Kind::SPlus, kN, 1, -2, 2),
          make_group(Kind::SPlus, IntMat{{3, 1}, {2, 1}}, 2, 1, -3), make_group(Kind::SMinus, kNm, 0, 0, 1),
          make_group(Kind::SMinus, IntMat{{1, 1}, {1, 0}}, 1, 1, 2), make_group(Kind::S0, kM)};
}

// Random isomorphism data G' -> G: K unimodular, N' = K N K^-1, v and eta random,
// p~' solved from the defining condition (skipped when p' would not be integral).
std::optional<std::pair<GroupDescriptor, GroupIsomorphism>> random_isomorphism(std::mt19937& rng, const GroupDescriptor& G) {
  static const IntMat units[] = {IntMat{{0, 1}, {1, 0}}, IntMat{{1, 1}, {0, 1}}, IntMat{{1, 0}, {-1, 1}}, IntMat{{-1, 0}, {0, 1}}};
  IntMat K = IntMat::identity(2);
  for (int i = 0; i < 3; ++i) K = K * units[rng() % 4];
  IntMat Np = K * G.matrix * inverse_unimodular(K);
  std::uniform_int_distribution<int> d(-3, 3);
  Int l1 = d(rng), l2 = d(rng);
  Vec2 v2{2 * d(rng) + G.r * K(0, 0) * K(0, 1), 2 * d(rng) + G.r * K(1, 0) * K(1, 1)};
  const int s = G.kind == Kind::SPlus ? 1 : -1;
  Vec2 lhs = (Np - Int(s) * IntMat::identity(2)) * v2;
  Vec2 kp = K * G.conj_lift.v2;
  Vec2 krl = K * Vec2{-2 * G.r * l2, 2 * G.r * l1};
  Int dk = det(K);
  // det(K) p~' = K p~ +- K r(-l2, l1) - (N' -+ I) v
  Vec2 pt{dk * (kp[0] + s * krl[0] - lhs[0]), dk * (kp[1] + s * krl[1] - lhs[1])};
  Int a = pt[0] - G.r * Np(0, 0) * Np(0, 1), b = pt[1] - G.r * Np(1, 0) * Np(1, 1);
  if (!is_even(a) || !is_even(b)) return std::nullopt;
  GroupDescriptor Gp = make_group(G.kind, Np, a / 2, b / 2, G.r);
  return std::make_pair(Gp, extend_isomorphism(K, v2, l1, l2, Gp, G));
}

}  // namespace

TEST(GroupArith, IdentityIsNeutral) {
  for (const auto& G : sample_groups()) {
    GroupElem g = word_to_normal_form({{0, 1}, {1, 2}, {3, -1}}, G);
    EXPECT_EQ(g_mul(g_identity(G), g, G), g);
    EXPECT_EQ(g_mul(g, g_identity(G), G), g);
  }
}

TEST(GroupArith, ConjugationOfG1) {
  GroupDescriptor G = make_group(Kind::SPlus, kN, 0, 0, 1);
  GroupElem g = word_to_normal_form({{0, 1}, {1, 1}, {0, -1}}, G);
  EXPECT_EQ(g.n0, 0);
  EXPECT_EQ(g.gamma, mu_embed(2, 1, 0, 1));
}

TEST(GroupArith, G1G2VersusG2G1) {
  for (int r : {1, 2, -3}) {
    GroupDescriptor G = make_group(Kind::SPlus, kN, 0, 0, r);
    GroupElem a = word_to_normal_form({{1, 1}, {2, 1}}, G), b = word_to_normal_form({{2, 1}, {1, 1}}, G);
    GammaRElem diff = gr_mul(a.gamma, gr_inv(b.gamma));
    EXPECT_EQ(diff, (GammaRElem{{0, 0}, 2 * r, r}));
  }
}

TEST(GroupArith, Inverses) {
  for (const auto& G : sample_groups()) {
    EXPECT_EQ(g_inv(g_identity(G), G), g_identity(G));
    GroupElem pure = gamma_elem(G, 2, -1, 3);
    GroupElem inv = g_inv(pure, G);
    if (G.kind != Kind::S0) {
      EXPECT_EQ(inv.gamma, gr_inv(pure.gamma));
    }
    GroupElem mixed = word_to_normal_form({{0, 1}, {2, 3}, {3, 1}}, G);
    EXPECT_EQ(g_mul(mixed, g_inv(mixed, G), G), g_identity(G));
    EXPECT_EQ(g_mul(g_inv(mixed, G), mixed, G), g_identity(G));
  }
}

TEST(GroupArith, EmptyWord) {
  for (const auto& G : sample_groups()) EXPECT_EQ(word_to_normal_form({}, G), g_identity(G));
}

TEST(GroupArith, CommutatorRelation) {
  for (const auto& G : sample_groups()) {
    if (G.kind == Kind::S0) continue;
    long long r = G.r.convert_to<long long>();
    EXPECT_EQ(word_to_normal_form({{3, r}}, G), word_to_normal_form({{1, 1}, {2, 1}, {1, -1}, {2, -1}}, G));
  }
}

TEST(GroupArith, ConjugationRelationMatchesMu) {
  GroupDescriptor G = make_group(Kind::SPlus, IntMat{{3, 1}, {2, 1}}, 2, 1, -3);
  GroupElem g = word_to_normal_form({{0, 1}, {1, 1}, {0, -1}}, G);
  EXPECT_EQ(g, gamma_elem(G, 3, 1, 2));
}

TEST(GroupArith, MixedDescriptorsRejected) {
  GroupDescriptor a = make_group(Kind::SPlus, kN, 0, 0, 1), b = make_group(Kind::SPlus, kN, 0, 0, 2);
  EXPECT_THROW(g_mul(generator(a, 1), generator(b, 1), b), PreconditionError);
}

TEST(Relations, AllPassForValidDescriptors) {
  for (const auto& G : sample_groups()) {
    auto rep = relation_check(G);
    EXPECT_TRUE(all_passed(rep)) << to_string(G.kind);
  }
}

TEST(Relations, SMinusInvertsG3) {
  GroupDescriptor G = make_group(Kind::SMinus, kNm, 1, 0, 3);
  bool seen = false;
  for (const auto& r : relation_check(G))
    if (r.name == "g0 g3 g0^-1 = g3^-1") {
      seen = true;
      EXPECT_TRUE(r.passed);
    }
  EXPECT_TRUE(seen);
}

TEST(Relations, PerturbedLiftBreaksFirstRelation) {
  GroupDescriptor G = make_group(Kind::SPlus, kN, 1, 1, 2);
  G.conj_lift.v2[0] += 2;  // v1 + 1
  G.conj_lift_inv = end_inverse(G.conj_lift);
  auto rep = relation_check(G);
  EXPECT_EQ(rep[0].name, "g0 g1 g0^-1 = g1^n11 g2^n12 g3^p");
  EXPECT_FALSE(rep[0].passed);
}

TEST(Fingerprint, TableSignatures) {
  EXPECT_EQ(fingerprint(make_group(Kind::SPlus, kN, 0, 0, 1)), (Fingerprint{CenterClass::InfiniteCyclic, false}));
  EXPECT_EQ(fingerprint(make_group(Kind::SMinus, kNm, 0, 0, 1)), (Fingerprint{CenterClass::Trivial, false}));
  EXPECT_EQ(fingerprint(make_group(Kind::S0, kM)), (Fingerprint{CenterClass::Trivial, true}));
}

TEST(Isomorphism, IdentityMap) {
  GroupDescriptor G = make_group(Kind::SPlus, kN, 1, -1, 2);
  auto rho = extend_isomorphism(IntMat::identity(2), {0, 0}, 0, 0, G, G);
  std::mt19937 rng(4);
  for (int i = 0; i < 50; ++i) {
    GroupElem g = word_to_normal_form(random_word(rng, 5), G);
    EXPECT_EQ(rho(g), g);
  }
}

TEST(Isomorphism, ConjugationLiftIsInnerByG0) {
  for (const auto& G : sample_groups()) {
    if (G.kind == Kind::S0) continue;
    auto rho = extend_isomorphism(G.conj_lift.K, G.conj_lift.v2, 0, 0, G, G);
    GroupElem g0 = generator(G, 0), g0i = g_inv(g0, G);
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
      GroupElem g = word_to_normal_form(random_word(rng, 5), G);
      ASSERT_EQ(rho(g), g_mul(g_mul(g0, g, G), g0i, G));
    }
  }
}

TEST(Isomorphism, ViolatedConditionIsNamed) {
  GroupDescriptor G = make_group(Kind::SPlus, kN, 0, 0, 1);
  try {
    extend_isomorphism(IntMat::identity(2), {2, 0}, 0, 0, G, G);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("(N' - I) v"), std::string::npos);
  }
  EXPECT_THROW(extend_isomorphism(IntMat{{0, 1}, {1, 0}}, {0, 0}, 0, 0, G, G), PreconditionError);
}

TEST(Isomorphism, RandomIsomorphismsAreHomomorphismsAndBijective) {
  std::mt19937 rng(6);
  int built = 0;
  for (const auto& G : sample_groups()) {
    if (G.kind == Kind::S0) continue;
    int tries = 0;
    int local = 0;
    while (local < 8 && tries++ < 200) {
      auto iso = random_isomorphism(rng, G);
      if (!iso) continue;
      const auto& [Gp, rho] = *iso;
      ASSERT_TRUE(all_passed(relation_check(Gp)));
      for (int i = 0; i < 25; ++i) {
        GroupElem a = word_to_normal_form(random_word(rng, 4), Gp), b = word_to_normal_form(random_word(rng, 4), Gp);
        ASSERT_EQ(rho(g_mul(a, b, Gp)), g_mul(rho(a), rho(b), G));
        ASSERT_EQ(rho.inverse(rho(a)), a);
        GroupElem c = word_to_normal_form(random_word(rng, 4), G);
        ASSERT_EQ(rho(rho.inverse(c)), c);
        ASSERT_TRUE(mu_image_test(rho(a).gamma));
      }
      ++local;
    }
    built += local;
  }
  EXPECT_GE(built, 30);
}

TEST(NormalFormProperty, AssociativityOnRandomWords) {
  std::mt19937 rng(7);
  auto groups = sample_groups();
  for (int it = 0; it < 300; ++it) {
    const auto& G = groups[static_cast<std::size_t>(it) % groups.size()];
    GroupElem a = word_to_normal_form(random_word(rng, 4), G), b = word_to_normal_form(random_word(rng, 4), G),
              c = word_to_normal_form(random_word(rng, 4), G);
    ASSERT_EQ(g_mul(g_mul(a, b, G), c, G), g_mul(a, g_mul(b, c, G), G));
  }
}

TEST(NormalFormProperty, InvariantUnderRelationInsertion) {
  std::mt19937 rng(8);
  auto groups = sample_groups();
  for (int it = 0; it < 300; ++it) {
    const auto& G = groups[static_cast<std::size_t>(it) % groups.size()];
    auto rels = defining_relations(G);
    Word w = random_word(rng, 6);
    std::size_t pos = rng() % (w.size() + 1);
    const Relation& rel = rels[rng() % rels.size()];
    Word ins = rng() % 2 ? concat(rel.lhs, inverse_word(rel.rhs)) : concat(inverse_word(rel.lhs), rel.rhs);
    Word w2(w.begin(), w.begin() + static_cast<long>(pos));
    w2 = concat(concat(w2, ins), Word(w.begin() + static_cast<long>(pos), w.end()));
    Word w3(w.begin(), w.begin() + static_cast<long>(pos));
    int g = static_cast<int>(rng() % 4);
    w3 = concat(concat(w3, {{g, 1}, {g, -1}}), Word(w.begin() + static_cast<long>(pos), w.end()));
    GroupElem base = word_to_normal_form(w, G);
    ASSERT_EQ(word_to_normal_form(w2, G), base);
    ASSERT_EQ(word_to_normal_form(w3, G), base);
  }
}

TEST(StructureProperty, GammaPartBehaviour) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-4, 4);
  for (const auto& G : sample_groups()) {
    if (G.kind == Kind::S0) continue;
    GroupElem g3 = generator(G, 3);
    for (int it = 0; it < 50; ++it) {
      GroupElem a = gamma_elem(G, d(rng), d(rng), d(rng)), b = gamma_elem(G, d(rng), d(rng), d(rng));
      // g3 central in Gamma; commutators of Gamma land in <g3>
      ASSERT_TRUE(commutes(g3, a, G));
      GroupElem comm = g_mul(g_mul(a, b, G), g_inv(g_mul(b, a, G), G), G);
      ASSERT_EQ(comm.gamma.zeta, (Vec2{0, 0}));
      ASSERT_TRUE(mu_image_test(comm.gamma));
      // g0-exponent is additive
      GroupElem x = word_to_normal_form(random_word(rng, 5), G), y = word_to_normal_form(random_word(rng, 5), G);
      ASSERT_EQ(g_mul(x, y, G).n0, x.n0 + y.n0);
    }
  }
}
