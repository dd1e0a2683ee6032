#include "doctest.h"

#include <cmath>
#include <map>

#include "enumeration.hpp"
#include "peel_map.hpp"
#include "peeling.hpp"
#include "stats.hpp"
#include "weights.hpp"

using namespace qm;

namespace {

ExactRational sum_atoms(const PeelLaw& law) {
  ExactRational s = 0;
  for (const auto& a : law.atoms()) s += a.prob;
  return s;
}

// Z(p) = [p = 1] + (1/12) [Z(p+1) + 2 sum_a Z(a) Z(p+1-a) + sum_{a+b+c=p+1} Z(a) Z(b) Z(c)]
ExactRational tutte_rhs(long p) {
  ExactRational s = partition_function(p + 1);
  for (long a = 1; a <= p; ++a) s += 2 * partition_function(a) * partition_function(p + 1 - a);
  for (long a = 1; a <= p; ++a)
    for (long b = 1; a + b <= p; ++b) s += partition_function(a) * partition_function(b) * partition_function(p + 1 - a - b);
  return (p == 1 ? ExactRational(1) : ExactRational(0)) + s / 12;
}

}  // namespace

TEST_CASE("event accounting rows") {
  auto c = event_accounting({PeelTag::C, 0, 0});
  CHECK(c.exposed == 3);
  CHECK(c.dY == 2);
  for (std::int64_t k = 0; k < 5; ++k) {
    auto l = event_accounting({PeelTag::L, 2 * k, 0});
    CHECK(l.exposed == 1);
    CHECK(l.swallowed_left == 2 * k);
    CHECK(l.dY == -2 * k);
    auto r = event_accounting({PeelTag::R, 2 * k + 1, 0});
    CHECK(r.exposed == 2);
    CHECK(r.swallowed_right == 2 * k + 1);
    CHECK(r.dY == 1);
  }
  auto cc = event_accounting({PeelTag::CC, 3, 5});
  CHECK(cc.exposed == 1);
  CHECK(cc.swallowed_left == 3);
  CHECK(cc.swallowed_right == 5);
  CHECK(cc.dY == -3);
}

TEST_CASE("dY identity across the whole vocabulary") {
  for (auto t : {PeelTag::Stop, PeelTag::C, PeelTag::L, PeelTag::R, PeelTag::LL, PeelTag::CC, PeelTag::RR})
    for (std::int64_t a = 1; a < 8; a += 2)
      for (std::int64_t b = 1; b < 8; b += 2) {
        PeelEvent e{t, 0, 0};
        if (t == PeelTag::L || t == PeelTag::R) e.l1 = a + b - 1;
        if (t == PeelTag::LL || t == PeelTag::CC || t == PeelTag::RR) e.l1 = a, e.l2 = b;
        auto x = event_accounting(e);
        CHECK(x.dY == x.exposed - x.swallowed_left - 1);
      }
}

TEST_CASE("Z satisfies the Tutte recursion") {
  for (long p = 1; p <= 12; ++p) CHECK(partition_function(p) == tutte_rhs(p));
}

TEST_CASE("finite kernels are normalized exactly") {
  for (long p = 1; p <= 8; ++p) CHECK(sum_atoms(finite_kernel(p)) == 1);
  CHECK(finite_kernel(1).probability({PeelTag::Stop, 0, 0}) == ExactRational(3, 4));
}

TEST_CASE("plane kernels are normalized exactly") {
  for (long p : {1, 2, 3, 6, 7}) CHECK(sum_atoms(plane_kernel(p)) == 1);
}

TEST_CASE("half-plane law: mass, symmetry, moments") {
  auto law = half_plane_law();
  CHECK(law.probability({PeelTag::C, 0, 0}) == ExactRational(3, 8));
  for (std::int64_t l = 0; l < 30; ++l) CHECK(law.probability({PeelTag::L, l, 0}) == law.probability({PeelTag::R, l, 0}));
  for (std::int64_t a = 1; a < 12; a += 2)
    for (std::int64_t b = 1; b < 12; b += 2)
      CHECK(law.probability({PeelTag::LL, a, b}) == law.probability({PeelTag::RR, b, a}));
  auto m = half_plane_moments();
  CHECK(std::abs(m.mass - 1) < 1e-12);
  CHECK(std::abs(m.mean_exposed - 2) < 1e-12);
  CHECK(std::abs(m.mean_swallowed - 1) < 1e-9);
  CHECK(std::abs(m.mean_dY - 0.5) < 1e-9);
}

TEST_CASE("z table against exact values and asymptotics") {
  for (long q = 1; q <= 40; ++q) CHECK(std::abs(z_value(q) / to_double(z_exact(q)) - 1) < 1e-12);
  CHECK(std::abs(std::exp(log_z(30)) / z_value(30) - 1) < 1e-10);
  double q = 4.0e5;
  CHECK(std::abs(z_value(400000) * std::pow(q, 2.5) / kZTailConst - (1 + kZTailA1 / q)) < 1e-8);
  CHECK(ZLaw::instance().tail_mass() < 1e-9);
}

TEST_CASE("z-law tail sampler follows q^{-3/2}") {
  Rng rng(5);
  const auto& zl = ZLaw::instance();
  const std::int64_t Q = zl.table_size();
  const int N = 20000;
  int above = 0;
  for (int i = 0; i < N; ++i) {
    std::int64_t q = zl.sample_tail(rng);
    REQUIRE(q > Q);
    if (q > 4 * Q) ++above;
  }
  double f = static_cast<double>(above) / N;
  CHECK(std::abs(f - 0.125) < 4 * std::sqrt(0.125 * 0.875 / N));
}

TEST_CASE("degenerate law and determinism") {
  Rng rng(1);
  auto law = PeelLaw::fixed({PeelTag::C, 0, 0});
  for (int i = 0; i < 10; ++i) CHECK(sample_event(law, rng) == PeelEvent{PeelTag::C, 0, 0});
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(sample_half_plane(a) == sample_half_plane(b));
}

namespace {

template <class Sampler>
double chi_square_against(const PeelLaw& law, Sampler draw, int n, long max_len = 40) {
  auto atoms = law.atoms(max_len);
  std::map<std::string, size_t> index;
  std::vector<double> probs, obs(atoms.size() + 1, 0);
  double mass = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    index[event_string(atoms[i].event)] = i;
    probs.push_back(to_double(atoms[i].prob));
    mass += probs.back();
  }
  probs.push_back(std::max(0.0, 1 - mass));
  for (int i = 0; i < n; ++i) {
    auto it = index.find(event_string(draw()));
    obs[it == index.end() ? atoms.size() : it->second] += 1;
  }
  return chi_square_gof(obs, probs).p_value;
}

}  // namespace

TEST_CASE("samplers match their exact tables") {
  Rng rng(2024);
  CHECK(chi_square_against(half_plane_law(), [&] { return sample_half_plane(rng); }, 200000) > 0.001);
  for (long p : {1, 2, 3, 5, 9})
    CHECK(chi_square_against(finite_kernel(p), [&] { return sample_boltzmann_event(p, rng); }, 100000) > 0.001);
  for (long p : {1, 2, 4})
    CHECK(chi_square_against(plane_kernel(p), [&] { return sample_plane_event(p, rng); }, 100000) > 0.001);
}

TEST_CASE("Boltzmann sampler: edge map frequency and mean size") {
  Rng rng(3);
  int edge = 0, N = 100000;
  for (int i = 0; i < N; ++i) {
    auto m = sample_boltzmann(1, 100000, rng);
    REQUIRE(m.has_value());
    if (m->live_half_edges() == 2) ++edge;
  }
  double f = static_cast<double>(edge) / N;
  CHECK(std::abs(f - 0.75) < 3 * std::sqrt(0.75 * 0.25 / N));
}
