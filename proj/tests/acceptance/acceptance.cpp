// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inoue/cli.hpp"
#include "inoue/inoue.hpp"

using namespace inoue;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const IntMat kGolden{{2, 1}, {1, 1}};
const IntMat kSilver{{2, 1}, {1, 0}};
const IntMat kPlastic{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};  // companion of x^3 - x - 1
const IntMat kJ{{0, 1}, {1, 0}};

SurfaceDescriptor random_2x2_surface(std::mt19937& rng, Kind kind, int entry, int pmax, int rmax) {
  std::uniform_int_distribution<int> e(-entry, entry), pq(-pmax, pmax), rr(1, rmax), coin(0, 1);
  for (;;) {
    IntMat n{{e(rng), e(rng)}, {e(rng), e(rng)}};
    int r = rr(rng) * (coin(rng) ? 1 : -1);
    int sign = coin(rng) ? 1 : -1;
    auto d = kind == Kind::SPlus ? make_splus(n, pq(rng), pq(rng), r, sign) : make_sminus(n, pq(rng), pq(rng), r, sign);
    if (validation_issues(d).empty()) return d;
  }
}

SurfaceDescriptor random_s0_surface(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-2, 2), coin(0, 1);
  for (;;) {
    IntMat m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = e(rng);
    auto d = make_s0(m, coin(rng) == 1);
    if (validation_issues(d).empty()) return d;
  }
}

bool all_equivalent_to(const SurfaceDescriptor& s, const std::vector<SurfaceDescriptor>& reps) {
  for (const auto& r : reps)
    if (decide_homotopy(s, r).kind != VerdictKind::Equivalent) return false;
  return true;
}

// 1 -------------------------------------------------------------------------
Outcome splus_class_count() {
  auto s = make_splus(kGolden, 0, 0, 1);
  auto reps = enumerate_representatives(s);
  if (reps.size() != 16) return {false, "golden S+ gave " + std::to_string(reps.size()) + " descriptors"};
  if (!all_equivalent_to(s, reps)) return {false, "a representative is not decider-equivalent"};
  std::mt19937 rng(101);
  std::size_t most = 0;
  for (int i = 0; i < 50; ++i) {
    auto d = random_2x2_surface(rng, Kind::SPlus, 4, 3, 3);
    auto n = enumerate_representatives(d).size();
    most = std::max(most, n);
    if (n > 16) return {false, describe(d) + " gave " + std::to_string(n)};
  }
  return {true, "16 equivalent descriptors; sweep of 50 max " + std::to_string(most)};
}

// 2 -------------------------------------------------------------------------
Outcome sminus_class_count() {
  auto s = make_sminus(kSilver, 0, 0, 1);
  auto reps = enumerate_representatives(s);
  if (reps.size() != 8) return {false, "silver S- gave " + std::to_string(reps.size()) + " descriptors"};
  if (!all_equivalent_to(s, reps)) return {false, "a representative is not decider-equivalent"};
  std::mt19937 rng(102);
  for (int i = 0; i < 50; ++i) {
    auto d = random_2x2_surface(rng, Kind::SMinus, 4, 3, 3);
    if (enumerate_representatives(d).size() > 8) return {false, describe(d) + " exceeds 8"};
  }
  return {true, "8 equivalent descriptors; sweep of 50 within cap"};
}

// 3 -------------------------------------------------------------------------
Outcome s0_class_count() {
  auto s = make_s0(kPlastic);
  auto reps = enumerate_representatives(s);
  if (reps.size() != 2) return {false, "plastic S0 gave " + std::to_string(reps.size()) + " descriptors"};
  if (!all_equivalent_to(s, reps)) return {false, "a representative is not decider-equivalent"};
  return {true, "2 descriptors"};
}

// 4 -------------------------------------------------------------------------
// Independent oracle: plain int64 search over K with entries <= 12, all (delta, epsilon),
// and membership in r Z^2 + (N' - I) Z^2 decided modulo r by exhausting (Z/r)^2.
using M2 = std::array<long long, 4>;

M2 to_m2(const IntMat& m) {
  return {m(0, 0).convert_to<long long>(), m(0, 1).convert_to<long long>(), m(1, 0).convert_to<long long>(),
          m(1, 1).convert_to<long long>()};
}
M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
long long det(const M2& a) { return a[0] * a[3] - a[1] * a[2]; }
M2 inverse_det1(const M2& a) {
  long long d = det(a);
  return {d * a[3], -d * a[1], -d * a[2], d * a[0]};
}
long long mod(long long x, long long m) { return ((x % m) + m) % m; }

bool in_lattice(long long x0, long long x1, long long r, const M2& np) {
  long long m = r < 0 ? -r : r;
  M2 s{np[0] - 1, np[1], np[2], np[3] - 1};
  for (long long a = 0; a < m; ++a)
    for (long long b = 0; b < m; ++b)
      if (mod(s[0] * a + s[1] * b - x0, m) == 0 && mod(s[2] * a + s[3] * b - x1, m) == 0) return true;
  return false;
}

class BruteForce {
 public:
  BruteForce() {
    for (long long a = -12; a <= 12; ++a)
      for (long long b = -12; b <= 12; ++b)
        for (long long c = -12; c <= 12; ++c)
          for (long long d = -12; d <= 12; ++d)
            if (a * d - b * c == 1 || a * d - b * c == -1) units_.push_back({a, b, c, d});
  }

  bool equivalent(const SurfaceDescriptor& s, const SurfaceDescriptor& sp) {
    M2 n = to_m2(s.matrix), np = to_m2(sp.matrix);
    long long p = s.p.convert_to<long long>(), q = s.q.convert_to<long long>(), r = s.r.convert_to<long long>();
    long long pp = sp.p.convert_to<long long>(), qp = sp.q.convert_to<long long>(), rp = sp.r.convert_to<long long>();
    for (int eps : {1, -1}) {
      for (const M2& k : conjugators(eps == 1 ? n : inverse_det1(n), np)) {
        for (int delta : {1, -1}) {
          if (rp != delta * det(k) * r) continue;
          long long x0 = delta * pp - eps * (k[0] * p + k[1] * q), x1 = delta * qp - eps * (k[2] * p + k[3] * q);
          if (in_lattice(x0, x1, r, np)) return true;
        }
      }
    }
    return false;
  }

 private:
  const std::vector<M2>& conjugators(const M2& ne, const M2& np) {
    auto key = std::make_pair(ne, np);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<M2> found;
    for (const M2& k : units_)
      if (mul(k, ne) == mul(np, k)) found.push_back(k);
    return cache_.emplace(key, std::move(found)).first->second;
  }

  std::vector<M2> units_;
  std::map<std::pair<M2, M2>, std::vector<M2>> cache_;
};

Outcome oracle_agreement() {
  // Pairs from the box: 600 deterministic draws, even draws constrained to equal trace
  // so that both verdicts are well represented.
  auto pool = enumerate_surfaces(Kind::SPlus, 3, 2, 2);
  std::map<std::string, std::vector<std::size_t>> by_trace;
  for (std::size_t i = 0; i < pool.size(); ++i) by_trace[trace(pool[i].matrix).str()].push_back(i);
  std::mt19937 rng(104);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  BruteForce brute;
  std::size_t pairs = 0, equivalent = 0, disagreements = 0;
  std::string first;
  for (int i = 0; i < 600; ++i) {
    std::size_t a = pick(rng), b = pick(rng);
    if (i % 2 == 0) {
      const auto& same = by_trace[trace(pool[a].matrix).str()];
      b = same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng)];
    }
    Verdict v = decide_homotopy_splus(pool[a], pool[b], SearchBounds{});
    bool expect = brute.equivalent(pool[a], pool[b]);
    ++pairs;
    if (expect) ++equivalent;
    if (v.kind == VerdictKind::Unknown || (v.kind == VerdictKind::Equivalent) != expect) {
      ++disagreements;
      if (first.empty()) first = describe(pool[a]) + " / " + describe(pool[b]);
    }
  }
  std::ostringstream os;
  os << pairs << " pairs from " << pool.size() << " surfaces, " << equivalent << " equivalent, " << disagreements
     << " disagreements";
  if (!first.empty()) os << " (first: " << first << ")";
  return {disagreements == 0, os.str()};
}

// 5 -------------------------------------------------------------------------
// Recomputes F(g' x) = rho(g') F(x) on the grid, independently of the builder's own check.
double conjugation_error(const SurfaceDescriptor& s, const SurfaceDescriptor& sp, const BiholResult& bh) {
  NumericGeometry ng = numeric_geometry(s), ngp = numeric_geometry(sp);
  if (!bh.t_matches) ngp.t = cplx(bh.t_re.to_double(), bh.t_im.to_double());
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    GroupElem img = bh.rho(generator(bh.rho.source(), i));
    for (const Point& x : sample_grid()) {
      Point lhs = bh.map(eval_generator(ngp, i, x.first, x.second));
      Point fx = bh.map(x);
      Point rhs = eval_group_elem(ng, img, fx.first, fx.second);
      double scale = std::max({1.0, std::abs(lhs.first), std::abs(lhs.second)});
      worst = std::max(worst, point_distance(lhs, rhs) / scale);
    }
  }
  return worst;
}

Outcome bihol_verification() {
  struct Instance {
    std::string label;
    SurfaceDescriptor s, sp;
  };
  std::vector<Instance> cases;
  auto golden = make_splus(kGolden, 1, 0, 1);
  golden.t = {Rat(1, 3), Rat(2)};
  cases.push_back({"S+ identity", golden, golden});
  auto rs = make_splus(kGolden, 0, 1, 2), rsp = rs;
  rsp.a_scale = Rat(3);
  rsp.b_scale = Rat(1, 2);
  cases.push_back({"S+ rescale", rs, rsp});
  auto ms = make_sminus(kSilver, 1, 1, 2), msp = ms;
  msp.a_scale = Rat(2);
  cases.push_back({"S- rescale", ms, msp});
  cases.push_back({"S+ K=J", make_splus(kGolden, 0, 0, 1), make_splus(kJ * kGolden * kJ, 0, 0, 1)});
  cases.push_back({"S- K=J", make_sminus(kSilver, 0, 0, 1), make_sminus(kJ * kSilver * kJ, 0, 0, 1)});
  std::mt19937 rng(105);
  std::uniform_int_distribution<int> ke(-2, 2);
  for (Kind kind : {Kind::SPlus, Kind::SMinus}) {
    int added = 0;
    while (added < 10) {
      auto s = random_2x2_surface(rng, kind, 3, 3, 2);
      IntMat k;
      do k = IntMat{{ke(rng), ke(rng)}, {ke(rng), ke(rng)}};
      while (!is_unimodular(k));
      auto sp = s;
      sp.matrix = k * s.matrix * inverse_unimodular(k);
      Vec2 kp = k * Vec2{s.p, s.q};
      sp.p = det(k) * kp[0];
      sp.q = det(k) * kp[1];
      if (!validation_issues(sp).empty()) continue;
      cases.push_back({to_string(kind) + " random K", s, sp});
      ++added;
    }
  }

  std::size_t built = 0;
  double worst = 0;
  for (const auto& c : cases) {
    Verdict v = decide_homotopy(c.s, c.sp);
    if (v.kind != VerdictKind::Equivalent) return {false, c.label + ": not homotopy equivalent"};
    auto bh = c.s.kind == Kind::SPlus ? build_bihol_splus(c.s, c.sp, *v.witness) : build_bihol_sminus(c.s, c.sp, *v.witness);
    if (!bh) return {false, c.label + ": no biholomorphism built (" + describe(c.s) + " / " + describe(c.sp) + ")"};
    double err = conjugation_error(c.s, c.sp, *bh);
    worst = std::max(worst, err);
    if (!(err < 1e-9)) return {false, c.label + ": deviation " + std::to_string(err)};
    ++built;
  }
  std::ostringstream os;
  os << built << " maps incl. K=J and rescale, max deviation " << worst;
  return {built >= 20, os.str()};
}

// 6 -------------------------------------------------------------------------
Outcome exact_identities() {
  std::mt19937 rng(106);
  for (int it = 0; it < 100; ++it) {
    Kind kind = it % 2 ? Kind::SMinus : Kind::SPlus;
    auto d = random_2x2_surface(rng, kind, 4, 3, 3);
    auto g = derive_geometry(d);
    const int sg = kind == Kind::SPlus ? 1 : -1;
    const IntMat& n = d.matrix;
    QuadExt ct[2] = {g.c[0] - Rat(1, 2) * g.a[0] * g.b[0], g.c[1] - Rat(1, 2) * g.a[1] * g.b[1]};
    for (std::size_t i = 0; i < 2; ++i) {
      QuadExt lhs = Rat(n(i, 0) - (i == 0 ? sg : 0)) * ct[0] + Rat(n(i, 1) - (i == 1 ? sg : 0)) * ct[1];
      Rat pt = Rat(i == 0 ? d.p : d.q) + Rat(d.r * n(i, 0) * n(i, 1), 2);
      if (lhs != g.theta * (pt / Rat(d.r))) return {false, "fails for " + describe(d)};
    }
  }
  return {true, "100 descriptors (50 S+, 50 S-), exact"};
}

// 7 -------------------------------------------------------------------------
Outcome group_laws() {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> d(-6, 6), small(-3, 3);
  auto elem = [&](const Int& r) {
    GammaRElem g{{d(rng), d(rng)}, d(rng), r};
    if (r % 2 == 0 && !is_even(g.y2)) g.y2 += 1;
    return g;
  };
  auto rand_r = [&](int it) { return Int((it % 2 ? 1 : -1) * (1 + it % 4)); };
  for (int it = 0; it < 1000; ++it) {
    Int r = rand_r(it);
    auto a = elem(r), b = elem(r), c = elem(r);
    if (gr_mul(gr_mul(a, b), c) != gr_mul(a, gr_mul(b, c))) return {false, "associativity"};
  }
  for (int it = 0; it < 1000; ++it) {
    Int r = rand_r(it);
    int a = d(rng), b = d(rng), c = d(rng), a2 = d(rng), b2 = d(rng), c2 = d(rng);
    // collected product under g2 g1 = g1 g2 g3^-r
    if (gr_mul(mu_embed(a, b, c, r), mu_embed(a2, b2, c2, r)) != mu_embed(a + a2, b + b2, c + c2 - r * a2 * b, r))
      return {false, "mu homomorphism"};
    GammaRElem g1 = mu_embed(a, 0, 0, r), g2 = mu_embed(0, b, 0, r);
    if (gr_mul(gr_mul(g1, g2), gr_mul(gr_inv(g1), gr_inv(g2))) != mu_embed(0, 0, r * a * b, r))
      return {false, "commutator identity"};
  }
  for (int it = 0; it < 1000; ++it) {
    Int r = rand_r(it);
    auto phi = lift_hom(small(rng), small(rng), small(rng), small(rng), small(rng), small(rng), r);
    auto psi = lift_hom(small(rng), small(rng), small(rng), small(rng), small(rng), small(rng), r);
    auto g = elem(r);
    GammaREnd comp = end_compose(phi, psi);
    Vec2 kv = psi.K * phi.v2;
    Int dk = det(phi.K);
    GammaREnd reversed{psi.K * phi.K, {kv[0] + dk * psi.v2[0], kv[1] + dk * psi.v2[1]}};
    if (end_apply(comp, g) != end_apply(phi, end_apply(psi, g)) || comp != reversed) return {false, "anti-isomorphism law"};
  }
  std::uniform_int_distribution<int> gen(0, 3), ex(-2, 2);
  for (int it = 0; it < 1000; ++it) {
    SurfaceDescriptor s = it % 3 == 0   ? random_2x2_surface(rng, Kind::SPlus, 3, 3, 3)
                          : it % 3 == 1 ? random_2x2_surface(rng, Kind::SMinus, 3, 3, 3)
                                        : random_s0_surface(rng);
    GroupDescriptor G = group_of(s);
    auto rels = defining_relations(G);
    const Relation& rel = rels[static_cast<std::size_t>(it) % rels.size()];
    Word w;
    for (int k = 0; k < 6; ++k) w.push_back({gen(rng), ex(rng)});
    Word inserted(w.begin(), w.begin() + 3);
    inserted.insert(inserted.end(), rel.lhs.begin(), rel.lhs.end());
    Word rinv = inverse_word(rel.rhs);
    inserted.insert(inserted.end(), rinv.begin(), rinv.end());
    inserted.insert(inserted.end(), w.begin() + 3, w.end());
    if (word_to_normal_form(w, G) != word_to_normal_form(inserted, G)) return {false, "relation '" + rel.name + "' changes a normal form"};
  }
  return {true, "1000 cases each: associativity, mu/commutator, anti-isomorphism, relation invariance"};
}

// 8 -------------------------------------------------------------------------
Outcome fingerprints() {
  std::mt19937 rng(108);
  std::map<Kind, std::vector<Fingerprint>> seen;
  for (int it = 0; it < 300; ++it) {
    SurfaceDescriptor s = it % 3 == 0   ? random_2x2_surface(rng, Kind::SPlus, 4, 3, 3)
                          : it % 3 == 1 ? random_2x2_surface(rng, Kind::SMinus, 4, 3, 3)
                                        : random_s0_surface(rng);
    Fingerprint fp = fingerprint(group_of(s));
    auto& v = seen[s.kind];
    if (v.empty()) v.push_back(fp);
    else if (!(v.front() == fp)) return {false, "kind " + to_string(s.kind) + " has two signatures"};
  }
  const Fingerprint &a = seen[Kind::S0][0], &b = seen[Kind::SPlus][0], &c = seen[Kind::SMinus][0];
  if (a == b || a == c || b == c) return {false, "two kinds share a signature"};
  auto show = [](const Fingerprint& f) {
    return "(" + to_string(f.center) + ", " + (f.gamma_abelian ? "abelian" : "non-abelian") + ")";
  };
  return {true, "300 descriptors; S0 " + show(a) + ", S+ " + show(b) + ", S- " + show(c)};
}

// 9 -------------------------------------------------------------------------
Outcome census_finiteness() {
  auto run = [](const char* jobs, std::string& out) {
    const char* argv[] = {"inoue", "census", "--nmax", "2", "--pmax", "1", "--rmax", "1", "--jobs", jobs};
    std::ostringstream os, es;
    int code = cli_dispatch(10, argv, os, es);
    out = os.str();
    return code;
  };
  std::string one, many;
  int c1 = run("1", one), c2 = run("4", many);
  if (c1 != 0 || c2 != 0) return {false, "exit codes " + std::to_string(c1) + ", " + std::to_string(c2)};
  if (one != many) return {false, "report differs between --jobs 1 and --jobs 4"};
  auto j = ojson::parse(one);
  std::size_t classes = 0;
  for (const auto& k : j["kinds"]) {
    std::size_t cap = k["kind"] == "S+" ? 16 : k["kind"] == "S-" ? 8 : 2;
    for (const auto& c : k["classes"]) {
      ++classes;
      std::size_t n = c["deformation_representative_count"];
      if (n == 0 || n > cap) return {false, "class with " + std::to_string(n) + " representatives"};
    }
  }
  return {true, std::to_string(j["surface_count"].get<std::size_t>()) + " surfaces, " + std::to_string(classes) +
                    " classes, byte-identical across job counts"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no runtime limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "S+ class count", 10, splus_class_count},
      {2, "S- class count", 5, sminus_class_count},
      {3, "S0 class count", 1, s0_class_count},
      {4, "decider vs brute-force oracle", 120, oracle_agreement},
      {5, "biholomorphism verification", 0, bihol_verification},
      {6, "exact identities", 0, exact_identities},
      {7, "group laws", 0, group_laws},
      {8, "kind fingerprints", 0, fingerprints},
      {9, "census finiteness", 0, census_finiteness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit";
    }
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " [" << time.str()
              << " s]" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
