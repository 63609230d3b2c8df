#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "inoue/equivalence.hpp"
#include "inoue/surface_json.hpp"

namespace inoue {

enum class ReportFormat { Json, Csv };

struct CensusConfig {
  long nmax = 2;  // |matrix entries| <= nmax
  long pmax = 1;  // |p|, |q| <= pmax
  long rmax = 1;  // 1 <= |r| <= rmax
  std::vector<Kind> kinds{Kind::SPlus, Kind::SMinus};
  SearchBounds bounds;
  unsigned jobs = 1;  // 0 = hardware concurrency
  ReportFormat format = ReportFormat::Json;
};

inline void check_config(const CensusConfig& c) {
  if (c.nmax < 1 || c.pmax < 1 || c.rmax < 1) throw PreconditionError("census: nmax, pmax and rmax must be >= 1");
  if (c.kinds.empty()) throw PreconditionError("census: no kinds selected");
}

/// Total order on descriptors used for every list in the report.
inline bool descriptor_less(const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
  auto key = [](const SurfaceDescriptor& d) {
    return std::make_tuple(static_cast<int>(d.kind), d.matrix.rows(), d.matrix.data(), d.p, d.q, d.r, d.sign, d.conj);
  };
  return key(a) < key(b);
}

/// All valid canonical descriptors (t = 0, sign +1, conj false) of one kind in the box.
inline std::vector<SurfaceDescriptor> enumerate_surfaces(Kind kind, long nmax, long pmax, long rmax) {
  std::vector<SurfaceDescriptor> out;
  const std::size_t n = kind == Kind::S0 ? 3 : 2;
  const std::size_t cells = n * n;
  std::vector<long> e(cells, -nmax);
  for (;;) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < cells; ++i) m(i / n, i % n) = e[i];
    if (kind == Kind::S0) {
      if (det(m) == 1) {
        auto d = make_s0(m);
        if (validation_issues(d).empty()) out.push_back(d);
      }
    } else if (spectral_issues(m, kind).empty()) {
      for (long p = -pmax; p <= pmax; ++p)
        for (long q = -pmax; q <= pmax; ++q)
          for (long r = -rmax; r <= rmax; ++r) {
            if (r == 0) continue;
            out.push_back(kind == Kind::SPlus ? make_splus(m, p, q, r) : make_sminus(m, p, q, r));
          }
    }
    std::size_t i = cells;
    while (i > 0 && e[i - 1] == nmax) e[--i] = -nmax;
    if (i == 0) break;
    ++e[i - 1];
  }
  std::sort(out.begin(), out.end(), descriptor_less);
  return out;
}

struct CensusEdge {
  std::size_t from, to;  // indices into CensusKindReport::surfaces
  EquivWitness witness;
};

struct CensusClass {
  SurfaceDescriptor representative;
  std::vector<std::size_t> members;  // sorted surface indices, representative first
  std::vector<SurfaceDescriptor> deformation_representatives;
  std::size_t unknown = 0;  // Unknown verdicts touching a member
};

struct CensusKindReport {
  Kind kind = Kind::SPlus;
  std::vector<SurfaceDescriptor> surfaces;
  std::vector<CensusClass> classes;
  std::vector<CensusEdge> edges;  // the verified witnesses the partition was built from
  std::size_t unknown = 0;
};

struct CensusReport {
  CensusConfig config;
  std::vector<CensusKindReport> kinds;
  std::size_t unknown_verdicts() const {
    std::size_t u = 0;
    for (const auto& k : kinds) u += k.unknown;
    return u;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // the smaller index stays the root, so roots are deterministic
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Cheap necessary invariants; only surfaces with equal keys are ever compared.
inline std::string bucket_key(const SurfaceDescriptor& d) {
  auto poly = [](const std::vector<Int>& c) {
    std::string s;
    for (const auto& x : c) s += x.str() + ",";
    return s;
  };
  if (d.kind == Kind::S0) {
    std::string a = poly(charpoly(d.matrix)), b = poly(charpoly(inverse_unimodular(d.matrix)));
    return a < b ? a + "|" + b : b + "|" + a;
  }
  return poly(charpoly(d.matrix)) + "|" + Int(abs(d.r)).str();
}

struct BucketResult {
  std::vector<CensusEdge> edges;
  std::vector<std::size_t> unknown_per_surface;  // parallel to the bucket's members
  std::size_t unknown = 0;
};

// Surfaces are added in order; each is compared with the current root of every
// component of the bucket, and every Equivalent verdict is a union.
inline BucketResult run_bucket(const std::vector<SurfaceDescriptor>& all, const std::vector<std::size_t>& idx,
                               const SearchBounds& b) {
  BucketResult res;
  res.unknown_per_surface.assign(idx.size(), 0);
  UnionFind uf(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < j; ++i)
      if (uf.find(i) == i) roots.push_back(i);
    for (std::size_t i : roots) {
      if (uf.find(i) == uf.find(j)) continue;
      Verdict v = decide_homotopy(all[idx[i]], all[idx[j]], b);
      if (v.kind == VerdictKind::Equivalent) {
        res.edges.push_back({idx[i], idx[j], *v.witness});
        uf.unite(i, j);
      } else if (v.kind == VerdictKind::Unknown) {
        ++res.unknown;
        ++res.unknown_per_surface[i];
        ++res.unknown_per_surface[j];
      }
    }
  }
  return res;
}

}  // namespace detail

/// Partition one kind's box into homotopy classes. Deterministic for any job count:
/// buckets are independent and each is processed sequentially.
inline CensusKindReport census_kind(Kind kind, const CensusConfig& cfg) {
  CensusKindReport rep;
  rep.kind = kind;
  rep.surfaces = enumerate_surfaces(kind, cfg.nmax, cfg.pmax, cfg.rmax);
  const auto& all = rep.surfaces;

  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < all.size(); ++i) by_key[detail::bucket_key(all[i])].push_back(i);
  std::vector<std::vector<std::size_t>> buckets;
  for (auto& [_, v] : by_key) buckets.push_back(std::move(v));

  std::vector<detail::BucketResult> results(buckets.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < buckets.size();) {
      try {
        results[k] = detail::run_bucket(all, buckets[k], cfg.bounds);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, buckets.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  detail::UnionFind uf(all.size());
  std::vector<std::size_t> unknown(all.size(), 0);
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    for (const auto& e : results[k].edges) {
      uf.unite(e.from, e.to);
      rep.edges.push_back(e);
    }
    for (std::size_t j = 0; j < buckets[k].size(); ++j) unknown[buckets[k][j]] += results[k].unknown_per_surface[j];
    rep.unknown += results[k].unknown;
  }
  std::sort(rep.edges.begin(), rep.edges.end(),
            [](const CensusEdge& a, const CensusEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });

  std::map<std::size_t, std::size_t> class_of_root;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::size_t root = uf.find(i);
    auto [it, fresh] = class_of_root.emplace(root, rep.classes.size());
    if (fresh) {
      CensusClass c;
      c.representative = all[i];
      rep.classes.push_back(std::move(c));
    }
    CensusClass& c = rep.classes[it->second];
    c.members.push_back(i);
    c.unknown += unknown[i];
  }
  for (auto& c : rep.classes) {
    c.deformation_representatives = enumerate_representatives(c.representative);
    std::sort(c.deformation_representatives.begin(), c.deformation_representatives.end(), descriptor_less);
    const std::size_t cap = kind == Kind::SPlus ? 16 : kind == Kind::SMinus ? 8 : 2;
    if (c.deformation_representatives.size() > cap) throw InternalError("census: representative count above the cap");
  }
  return rep;
}

inline CensusReport run_census(const CensusConfig& cfg) {
  check_config(cfg);
  CensusReport report;
  report.config = cfg;
  std::vector<Kind> kinds = cfg.kinds;
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  for (Kind k : kinds) report.kinds.push_back(census_kind(k, cfg));
  return report;
}

inline ojson witness_to_json(const EquivWitness& w) {
  ojson j;
  j["K"] = detail::matrix_to_json(w.K);
  j["delta"] = w.delta;
  j["epsilon"] = w.epsilon;
  if (w.K.rows() == 2) {
    j["u"] = detail::to_json_int(w.uv[0]);
    j["v"] = detail::to_json_int(w.uv[1]);
    j["k13"] = detail::to_json_int(w.k3[0]);
    j["k23"] = detail::to_json_int(w.k3[1]);
  }
  return j;
}

/// Report as JSON ("schema": 1). Contains nothing that depends on scheduling or timing.
inline ojson census_to_json(const CensusReport& r) {
  ojson j;
  j["schema"] = 1;
  ojson cfg;
  cfg["nmax"] = r.config.nmax;
  cfg["pmax"] = r.config.pmax;
  cfg["rmax"] = r.config.rmax;
  cfg["kinds"] = ojson::array();
  for (const auto& k : r.kinds) cfg["kinds"].push_back(to_string(k.kind));
  cfg["bounds"] = {{"conj", r.config.bounds.conjugator}, {"eta", r.config.bounds.eta}, {"s0", r.config.bounds.s0}};
  j["config"] = cfg;
  std::size_t total = 0, classes = 0;
  for (const auto& k : r.kinds) {
    total += k.surfaces.size();
    classes += k.classes.size();
  }
  j["surface_count"] = total;
  j["class_count"] = classes;
  j["unknown_verdicts"] = r.unknown_verdicts();
  j["kinds"] = ojson::array();
  for (const auto& k : r.kinds) {
    ojson jk;
    jk["kind"] = to_string(k.kind);
    jk["surface_count"] = k.surfaces.size();
    jk["class_count"] = k.classes.size();
    jk["unknown_verdicts"] = k.unknown;
    jk["classes"] = ojson::array();
    for (std::size_t ci = 0; ci < k.classes.size(); ++ci) {
      const auto& c = k.classes[ci];
      ojson jc;
      jc["index"] = ci;
      jc["representative"] = surface_to_json(c.representative);
      jc["member_count"] = c.members.size();
      jc["members"] = ojson::array();
      for (auto m : c.members) jc["members"].push_back(surface_to_json(k.surfaces[m]));
      jc["deformation_representative_count"] = c.deformation_representatives.size();
      jc["deformation_representatives"] = ojson::array();
      for (const auto& d : c.deformation_representatives) jc["deformation_representatives"].push_back(surface_to_json(d));
      jc["unknown_verdicts"] = c.unknown;
      jk["classes"].push_back(jc);
    }
    jk["witnesses"] = ojson::array();
    for (const auto& e : k.edges) {
      ojson je;
      je["from"] = describe(k.surfaces[e.from]);
      je["to"] = describe(k.surfaces[e.to]);
      je["witness"] = witness_to_json(e.witness);
      jk["witnesses"].push_back(je);
    }
    j["kinds"].push_back(jk);
  }
  return j;
}

/// One row per class.
inline std::string census_to_csv(const CensusReport& r) {
  std::ostringstream os;
  os << "kind,class,representative,member_count,deformation_representative_count,unknown_verdicts\n";
  for (const auto& k : r.kinds)
    for (std::size_t ci = 0; ci < k.classes.size(); ++ci) {
      const auto& c = k.classes[ci];
      os << to_string(k.kind) << "," << ci << ",\"" << describe(c.representative) << "\"," << c.members.size() << ","
         << c.deformation_representatives.size() << "," << c.unknown << "\n";
    }
  return os.str();
}

struct SampleCheck {
  std::size_t same_class_pairs = 0;
  std::size_t cross_class_pairs = 0;
  std::vector<std::string> failures;
};

/// Re-runs the deciders on random pairs: same-class pairs must be Equivalent,
/// cross-class pairs must not be.
inline SampleCheck verify_census_samples(const CensusReport& r, std::size_t samples, unsigned seed) {
  SampleCheck out;
  std::mt19937 rng(seed);
  for (const auto& k : r.kinds) {
    if (k.surfaces.size() < 2) continue;
    std::vector<std::size_t> class_of(k.surfaces.size());
    for (std::size_t ci = 0; ci < k.classes.size(); ++ci)
      for (auto m : k.classes[ci].members) class_of[m] = ci;
    std::uniform_int_distribution<std::size_t> pick(0, k.surfaces.size() - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t a = pick(rng), b = pick(rng);
      // half of the samples from inside a class
      if (s % 2 == 0) {
        const auto& mem = k.classes[class_of[a]].members;
        b = mem[std::uniform_int_distribution<std::size_t>(0, mem.size() - 1)(rng)];
      }
      Verdict v = decide_homotopy(k.surfaces[a], k.surfaces[b], r.config.bounds);
      bool same = class_of[a] == class_of[b];
      (same ? out.same_class_pairs : out.cross_class_pairs)++;
      if (same && v.kind != VerdictKind::Equivalent)
        out.failures.push_back("same class but " + to_string(v.kind) + ": " + describe(k.surfaces[a]) + " / " + describe(k.surfaces[b]));
      if (!same && v.kind == VerdictKind::Equivalent)
        out.failures.push_back("different classes but equivalent: " + describe(k.surfaces[a]) + " / " + describe(k.surfaces[b]));
    }
  }
  return out;
}

}  // namespace inoue
