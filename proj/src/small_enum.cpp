#include "small_enum.hpp"

#include <numeric>
#include <stdexcept>

#include "enumeration.hpp"
#include "peel_map.hpp"

namespace qm {

namespace {

void check_bounds(int n, int p) {
  if (n < 0 || p < 1 || n > kEnumMaxN || p > kEnumMaxP)
    throw std::out_of_range("enumeration bounds are n <= 5, 1 <= p <= 4");
}

struct Enumerator {
  const std::function<void(const PlanarMap&)>& visit;

  // faces still to place; every open hole of half k needs at least k - 1 of them
  void run(const PeelMap& pm, std::vector<int> open, int faces_left) {
    if (open.empty()) {
      if (faces_left == 0) visit(pm.m.compacted());
      return;
    }
    int f = open.back();
    open.pop_back();
    std::int64_t k = pm.hole[f].half;
    std::int64_t reserved = 0;
    for (int g : open) reserved += pm.hole[g].half - 1;
    for (const auto& atom : finite_kernel(k).atoms()) {
      const PeelEvent& ev = atom.event;
      PeelMap next = pm;
      if (ev.tag == PeelTag::Stop) {
        if (faces_left < reserved) continue;
        next.collapse(next.m.faces[f].anchor);
        run(next, open, faces_left);
        continue;
      }
      std::int64_t need = reserved + k + half_perimeter_change(ev) - 1;
      for (auto h : enclosed_halves(ev)) need += h - 1;
      if (faces_left - 1 < need) continue;
      auto res = next.peel(next.m.faces[f].anchor, ev);
      auto nopen = open;
      nopen.push_back(res.main_hole);
      for (int g : res.new_holes) nopen.push_back(g);
      run(next, nopen, faces_left - 1);
    }
  }
};

}  // namespace

void enumerate_each(int n, int p, const std::function<void(const PlanarMap&)>& visit) {
  check_bounds(n, p);
  PeelMap pm = PeelMap::polygon(p, HoleLaw::Boltzmann);
  Enumerator en{visit};
  en.run(pm, {pm.m.face[pm.m.root]}, n);
}

std::vector<PlanarMap> enumerate(int n, int p) {
  std::vector<PlanarMap> out;
  enumerate_each(n, p, [&](const PlanarMap& m) { out.push_back(m); });
  return out;
}

std::vector<VerifyRow> verify_counts(int n_max, int p_max) {
  check_bounds(n_max, p_max);
  std::vector<VerifyRow> rows;
  for (int p = 1; p <= p_max; ++p)
    for (int n = 0; n <= n_max; ++n) {
      VerifyRow r;
      r.n = n;
      r.p = p;
      long c = 0;
      enumerate_each(n, p, [&](const PlanarMap&) { ++c; });
      r.enumerated = c;
      r.formula = count_maps(n, p).value;
      r.ok = r.enumerated == r.formula;
      rows.push_back(r);
    }
  return rows;
}

BoltzmannTable boltzmann_exact_distribution(int p, int n_max) {
  check_bounds(n_max, p);
  BoltzmannTable t;
  ExactRational Z = partition_function(p);
  for (int n = 0; n <= n_max; ++n) {
    ExactRational w = ExactRational(1, ipow(12, static_cast<unsigned>(n))) / Z;
    enumerate_each(n, p, [&](const PlanarMap& m) {
      t.atoms.push_back({canonical_code(m), n, w});
      t.mass += w;
    });
  }
  return t;
}

}  // namespace qm
