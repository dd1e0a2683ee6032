#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exact.hpp"
#include "rng.hpp"

namespace qm {

// Peel edge e = x0 -> x1 with the unexplored region on its left. The revealed face has
// corners x0, x1, c, d (counterclockwise). L/R say which side of e the boundary is swallowed on.
enum class PeelTag : std::uint8_t { Stop, C, L, R, LL, CC, RR };

struct PeelEvent {
  PeelTag tag = PeelTag::C;
  std::int64_t l1 = 0, l2 = 0;  // one-segment cases use l1; CC(l1, l2) swallows l1 left, l2 right
  bool operator==(const PeelEvent&) const = default;
};

struct Accounting {
  std::int64_t exposed = 0, swallowed_left = 0, swallowed_right = 0, dY = 0;
};

Accounting event_accounting(const PeelEvent& e);
std::int64_t swallowed(const PeelEvent& e);
// Change in half-perimeter of the region that stays open (the infinite one, or the main child).
std::int64_t half_perimeter_change(const PeelEvent& e);
// Half-perimeters of the finite regions the event encloses, left to right.
std::vector<std::int64_t> enclosed_halves(const PeelEvent& e);
std::string tag_name(PeelTag t);
std::string event_params(const PeelEvent& e);
std::string event_string(const PeelEvent& e);
bool valid_event(const PeelEvent& e);

enum class Regime : std::uint8_t { HalfPlane, Boltzmann, Plane, Fixed };

struct LawAtom {
  PeelEvent event;
  ExactRational prob;
};

class PeelLaw {
 public:
  static PeelLaw half_plane();
  static PeelLaw boltzmann(long p);
  static PeelLaw plane(long p);
  static PeelLaw fixed(const PeelEvent& e);

  Regime regime() const { return regime_; }
  long p() const { return p_; }
  ExactRational probability(const PeelEvent& e) const;
  double probability_double(const PeelEvent& e) const;
  // Every atom for the finite regimes; half-plane atoms with all lengths <= max_len.
  std::vector<LawAtom> atoms(long max_len = 64) const;
  // Total mass: exact for finite regimes, atoms plus asymptotic tail for the half-plane.
  double total_mass() const;
  PeelEvent sample(Rng& rng) const;

 private:
  Regime regime_ = Regime::HalfPlane;
  long p_ = 0;
  PeelEvent fixed_{};
};

inline PeelLaw half_plane_law() { return PeelLaw::half_plane(); }
inline PeelLaw finite_kernel(long p) { return PeelLaw::boltzmann(p); }
inline PeelLaw plane_kernel(long p) { return PeelLaw::plane(p); }
inline PeelEvent sample_event(const PeelLaw& law, Rng& rng) { return law.sample(rng); }

PeelEvent sample_half_plane(Rng& rng);
PeelEvent sample_boltzmann_event(std::int64_t p, Rng& rng);
PeelEvent sample_plane_event(std::int64_t p, Rng& rng);

// Series values under the half-plane law: sum z, sum q z, E[exposed], E[swallowed].
struct HalfPlaneMoments {
  double mass = 0, mean_exposed = 0, mean_swallowed = 0, mean_dY = 0;
};
HalfPlaneMoments half_plane_moments();

}  // namespace qm
