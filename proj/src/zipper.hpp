#pragma once

#include "exact.hpp"
#include "planar_map.hpp"

namespace qm {

struct SawMap {
  PlanarMap map;
  Saw saw;
};

// Z_{b,f}: identify e_i with the reverse of e_{2f-1-i} (indices mod 2p).
SawMap zip(const PlanarMap& bm, int b, int f);
PlanarMap unzip(const PlanarMap& m, const Saw& w);
ExactInt count_saws(const PlanarMap& m, int b, int f);

}  // namespace qm
