#pragma once

#include <random>

#include "inoue/surfaces.hpp"

namespace inoue::testing {

/// Random valid S+ or S- descriptor with matrix entries in [-entry, entry].
inline SurfaceDescriptor random_surface(std::mt19937& rng, Kind kind, int entry = 4, int pmax = 3, int rmax = 3) {
  std::uniform_int_distribution<int> e(-entry, entry), pq(-pmax, pmax), rr(1, rmax), sg(0, 1);
  for (;;) {
    IntMat n{{e(rng), e(rng)}, {e(rng), e(rng)}};
    int r = rr(rng) * (sg(rng) ? 1 : -1);
    SurfaceDescriptor d = kind == Kind::SPlus ? make_splus(n, pq(rng), pq(rng), r, sg(rng) ? 1 : -1)
                                              : make_sminus(n, pq(rng), pq(rng), r, sg(rng) ? 1 : -1);
    if (validation_issues(d).empty()) return d;
  }
}

inline const IntMat kGolden{{2, 1}, {1, 1}};
inline const IntMat kGoldenSwapped{{1, 1}, {1, 2}};
inline const IntMat kSilver{{2, 1}, {1, 0}};
inline const IntMat kPlastic{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
inline const IntMat kJ{{0, 1}, {1, 0}};

}  // namespace inoue::testing
