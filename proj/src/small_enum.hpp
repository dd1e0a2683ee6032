#pragma once

#include <functional>
#include <string>
#include <vector>

#include "exact.hpp"
#include "planar_map.hpp"

namespace qm {

constexpr int kEnumMaxN = 5;
constexpr int kEnumMaxP = 4;

// Every rooted quadrangulation with n inner faces and simple boundary 2p, once each,
// by recursive peeling over all finite-kernel outcomes.
std::vector<PlanarMap> enumerate(int n, int p);
void enumerate_each(int n, int p, const std::function<void(const PlanarMap&)>& visit);

struct VerifyRow {
  int n = 0, p = 0;
  ExactInt enumerated, formula;
  bool ok = false;
};
std::vector<VerifyRow> verify_counts(int n_max, int p_max);

struct BoltzmannAtom {
  std::string code;  // canonical code
  int n = 0;
  ExactRational prob;
};
struct BoltzmannTable {
  std::vector<BoltzmannAtom> atoms;
  ExactRational mass;  // sum over n <= n_max
};
BoltzmannTable boltzmann_exact_distribution(int p, int n_max);

}  // namespace qm
