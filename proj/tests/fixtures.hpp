#pragma once

#include "planecurve/oracle.hpp"

namespace fixtures {

using namespace planecurve;

// Trefoil shadow, rooted on one of its two triangles. Frozen from the n=3
// enumeration; its Gauss code is 1,2,3,1,2,3.
inline CombMap trefoil() {
  return CombMap::from_arrays({1, 3, 5, 6, 2, 8, 0, 11, 4, 10, 7, 9},
                              {2, 4, 0, 7, 1, 9, 10, 3, 11, 5, 6, 8}, 0);
}

// Two circles crossing twice: planar with four bigon faces, but sigma^2 tau
// has four cycles.
inline CombMap hopf_shadow() {
  return CombMap::from_arrays({1, 2, 3, 0, 5, 6, 7, 4}, {6, 5, 4, 7, 2, 1, 0, 3}, 0);
}

// Oracle tables are shared between test cases.
inline const EnumTable& table(int L) {
  static std::vector<EnumTable> cache(kOracleMaxSize + 1);
  auto& t = cache.at(static_cast<std::size_t>(L));
  if (t.L == 0) t = enumerate_rooted_plane_curves(L);
  return t;
}

inline std::vector<CombMap> curves(int L) {
  std::vector<CombMap> out;
  const auto& t = table(L);
  for (int n = 1; n <= L; ++n) {
    for (const auto& code : t.classes[n]) out.push_back(decode_canonical(code));
  }
  return out;
}

}  // namespace fixtures
