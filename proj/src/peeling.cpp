#include "peeling.hpp"

#include <cmath>
#include <stdexcept>

#include "weights.hpp"

namespace qm {

namespace {

bool one_segment(PeelTag t) { return t == PeelTag::L || t == PeelTag::R; }
bool two_segment(PeelTag t) { return t == PeelTag::LL || t == PeelTag::CC || t == PeelTag::RR; }

double log_h(std::int64_t q) {
  double x = static_cast<double>(q);
  return std::lgamma(3 * x + 1) - std::lgamma(x + 1) - std::lgamma(2 * x) + x * std::log(4.0 / 27.0);
}

}  // namespace

bool valid_event(const PeelEvent& e) {
  if (e.tag == PeelTag::Stop || e.tag == PeelTag::C) return e.l1 == 0 && e.l2 == 0;
  if (one_segment(e.tag)) return e.l1 >= 0 && e.l2 == 0;
  return e.l1 >= 1 && e.l2 >= 1 && e.l1 % 2 == 1 && e.l2 % 2 == 1;
}

Accounting event_accounting(const PeelEvent& e) {
  Accounting a;
  switch (e.tag) {
    case PeelTag::Stop: break;
    case PeelTag::C: a.exposed = 3; break;
    case PeelTag::L: a.exposed = e.l1 % 2 ? 2 : 1; a.swallowed_left = e.l1; break;
    case PeelTag::R: a.exposed = e.l1 % 2 ? 2 : 1; a.swallowed_right = e.l1; break;
    case PeelTag::LL: a.exposed = 1; a.swallowed_left = e.l1 + e.l2; break;
    case PeelTag::CC: a.exposed = 1; a.swallowed_left = e.l1; a.swallowed_right = e.l2; break;
    case PeelTag::RR: a.exposed = 1; a.swallowed_right = e.l1 + e.l2; break;
  }
  a.dY = a.exposed - a.swallowed_left - 1;
  return a;
}

std::int64_t swallowed(const PeelEvent& e) {
  auto a = event_accounting(e);
  return a.swallowed_left + a.swallowed_right;
}

std::int64_t half_perimeter_change(const PeelEvent& e) {
  if (e.tag == PeelTag::Stop) return -1;
  auto a = event_accounting(e);
  return (a.exposed - 1 - a.swallowed_left - a.swallowed_right) / 2;
}

std::vector<std::int64_t> enclosed_halves(const PeelEvent& e) {
  if (one_segment(e.tag)) return {e.l1 / 2 + 1};
  if (two_segment(e.tag)) return {(e.l1 + 1) / 2, (e.l2 + 1) / 2};
  return {};
}

std::string tag_name(PeelTag t) {
  switch (t) {
    case PeelTag::Stop: return "Stop";
    case PeelTag::C: return "C";
    case PeelTag::L: return "L";
    case PeelTag::R: return "R";
    case PeelTag::LL: return "LL";
    case PeelTag::CC: return "CC";
    case PeelTag::RR: return "RR";
  }
  return "?";
}

std::string event_params(const PeelEvent& e) {
  if (one_segment(e.tag)) return std::to_string(e.l1);
  if (two_segment(e.tag)) return std::to_string(e.l1) + ";" + std::to_string(e.l2);
  return "";
}

std::string event_string(const PeelEvent& e) {
  auto p = event_params(e);
  return p.empty() ? tag_name(e.tag) : tag_name(e.tag) + "(" + p + ")";
}

PeelLaw PeelLaw::half_plane() { return PeelLaw{}; }

PeelLaw PeelLaw::boltzmann(long p) {
  if (p < 1) throw std::domain_error("finite kernel needs p >= 1");
  PeelLaw law;
  law.regime_ = Regime::Boltzmann;
  law.p_ = p;
  return law;
}

PeelLaw PeelLaw::plane(long p) {
  if (p < 1) throw std::domain_error("plane kernel needs p >= 1");
  PeelLaw law;
  law.regime_ = Regime::Plane;
  law.p_ = p;
  return law;
}

PeelLaw PeelLaw::fixed(const PeelEvent& e) {
  PeelLaw law;
  law.regime_ = Regime::Fixed;
  law.fixed_ = e;
  return law;
}

ExactRational PeelLaw::probability(const PeelEvent& e) const {
  if (!valid_event(e)) return 0;
  if (regime_ == Regime::Fixed) return e == fixed_ ? 1 : 0;
  if (e.tag == PeelTag::Stop) return regime_ == Regime::Boltzmann && p_ == 1 ? ExactRational(3, 4) : ExactRational(0);
  ExactRational w(3, 8);
  for (auto k : enclosed_halves(e)) w *= z_exact(k);
  if (regime_ == Regime::HalfPlane) return w;
  long main = p_ + static_cast<long>(half_perimeter_change(e));
  if (main < 1) return 0;
  if (regime_ == Regime::Plane) return w * h_exact(main) / h_exact(p_);
  // finite holes are described with right-swallowing cases only
  if (e.tag == PeelTag::L || e.tag == PeelTag::LL || e.tag == PeelTag::CC) return 0;
  return w * z_exact(main) / z_exact(p_);
}

double PeelLaw::probability_double(const PeelEvent& e) const {
  if (!valid_event(e)) return 0;
  if (regime_ == Regime::Fixed) return e == fixed_ ? 1 : 0;
  if (e.tag == PeelTag::Stop) return regime_ == Regime::Boltzmann && p_ == 1 ? 0.75 : 0.0;
  double w = 3.0 / 8.0;
  for (auto k : enclosed_halves(e)) w *= z_value(k);
  if (regime_ == Regime::HalfPlane) return w;
  std::int64_t main = p_ + half_perimeter_change(e);
  if (main < 1) return 0;
  if (regime_ == Regime::Plane) return w * std::exp(log_h(main) - log_h(p_));
  if (e.tag == PeelTag::L || e.tag == PeelTag::LL || e.tag == PeelTag::CC) return 0;
  return w * z_value(main) / z_value(p_);
}

std::vector<LawAtom> PeelLaw::atoms(long max_len) const {
  std::vector<PeelEvent> evs;
  if (regime_ == Regime::Fixed) {
    evs.push_back(fixed_);
  } else if (regime_ == Regime::Boltzmann) {
    if (p_ == 1) evs.push_back({PeelTag::Stop, 0, 0});
    evs.push_back({PeelTag::C, 0, 0});
    for (long l = 0; l <= 2 * p_ - 1; ++l) evs.push_back({PeelTag::R, l, 0});
    for (long a = 1; a < p_; ++a)
      for (long b = 1; a + b <= p_; ++b) evs.push_back({PeelTag::RR, 2 * a - 1, 2 * b - 1});
  } else {
    long one_max = regime_ == Regime::Plane ? 2 * p_ - 1 : max_len;
    long two_sum = regime_ == Regime::Plane ? 2 * p_ - 2 : 2 * max_len;
    evs.push_back({PeelTag::C, 0, 0});
    for (PeelTag t : {PeelTag::L, PeelTag::R})
      for (long l = 0; l <= one_max; ++l) evs.push_back({t, l, 0});
    for (PeelTag t : {PeelTag::LL, PeelTag::CC, PeelTag::RR})
      for (long a = 1; a <= std::min(max_len, two_sum); a += 2)
        for (long b = 1; a + b <= two_sum && b <= max_len; b += 2) evs.push_back({t, a, b});
  }
  std::vector<LawAtom> out;
  for (const auto& e : evs) out.push_back({e, probability(e)});
  return out;
}

HalfPlaneMoments half_plane_moments() {
  const auto& law = ZLaw::instance();
  std::int64_t Q = law.table_size();
  long double s1 = 0, s2 = 0;
  for (std::int64_t q = Q; q >= 1; --q) {
    s1 += z_value(q);
    s2 += static_cast<long double>(q) * z_value(q);
  }
  // sum_{q > Q} q^{-s} by the midpoint rule
  auto T = [&](double s) { return std::pow(static_cast<double>(Q) + 0.5, 1 - s) / (s - 1); };
  s1 += kZTailConst * (T(2.5) + kZTailA1 * T(3.5) + kZTailA2 * T(4.5));
  s2 += kZTailConst * (T(1.5) + kZTailA1 * T(2.5) + kZTailA2 * T(3.5));
  long double w = 3.0L / 8.0L;
  HalfPlaneMoments m;
  m.mass = static_cast<double>(w + 4 * w * s1 + 3 * w * s1 * s1);
  m.mean_exposed = static_cast<double>(3 * w + w * s1 * (1 + 1 + 2 + 2) + 3 * w * s1 * s1);
  m.mean_swallowed = static_cast<double>(w * (2 * (4 * s2 - 3 * s1) + 3 * (4 * s1 * s2 - 2 * s1 * s1)));
  m.mean_dY = m.mean_exposed - 1 - m.mean_swallowed / 2;
  return m;
}

double PeelLaw::total_mass() const {
  if (regime_ == Regime::HalfPlane) return half_plane_moments().mass;
  ExactRational s = 0;
  for (const auto& a : atoms()) s += a.prob;
  return to_double(s);
}

PeelEvent sample_half_plane(Rng& rng) {
  const auto& zl = ZLaw::instance();
  double u = rng.uniform();
  if (u < 3.0 / 8.0) return {PeelTag::C, 0, 0};
  if (u < 7.0 / 8.0) {
    int fam = std::min(3, static_cast<int>((u - 3.0 / 8.0) * 8.0));
    std::int64_t q = zl.sample(rng);
    PeelTag t = fam < 2 ? PeelTag::L : PeelTag::R;
    std::int64_t l = fam % 2 == 0 ? 2 * (q - 1) : 2 * q - 1;
    return {t, l, 0};
  }
  int fam = std::min(2, static_cast<int>((u - 7.0 / 8.0) * 24.0));
  static constexpr PeelTag two[3] = {PeelTag::LL, PeelTag::CC, PeelTag::RR};
  std::int64_t a = zl.sample(rng);
  std::int64_t b = zl.sample(rng);
  return {two[fam], 2 * a - 1, 2 * b - 1};
}

PeelEvent sample_boltzmann_event(std::int64_t p, Rng& rng) {
  if (p < 1) throw std::domain_error("finite kernel needs p >= 1");
  if (p == 1 && rng.uniform() < 0.75) return {PeelTag::Stop, 0, 0};
  const auto& zl = ZLaw::instance();
  const double zp = z_value(p);
  const double B1 = z_value((p + 2) / 2) / zp;
  const double B2 = p >= 2 ? z_value((p + 3) / 3) / zp : 0.0;
  const double wC = 3.0 / 8.0, w1 = B1 / 2, w2 = B2 / 8;
  const double M = wC + w1 + w2;
  for (;;) {
    double u = rng.uniform() * M;
    if (u < wC) {
      if (rng.uniform() < z_value(p + 1) / zp) return {PeelTag::C, 0, 0};
    } else if (u < wC + w1) {
      bool odd = rng.coin();
      bool child_drawn = rng.coin();
      std::int64_t s = zl.sample(rng);
      if (s > p) continue;
      std::int64_t k = child_drawn ? s - 1 : p - s;
      double z1 = z_value(k + 1), z2 = z_value(p - k);
      if (rng.uniform() < z1 * z2 / ((z1 + z2) * zp * B1)) return {PeelTag::R, odd ? 2 * k + 1 : 2 * k, 0};
    } else {
      int i = static_cast<int>(rng.below(3));
      std::int64_t x = zl.sample(rng), y = zl.sample(rng);
      std::int64_t m = p + 1 - x - y;
      if (m < 1) continue;
      std::int64_t part[3];
      int j = 0;
      std::int64_t others[2] = {x, y};
      for (int pos = 0; pos < 3; ++pos) part[pos] = pos == i ? m : others[j++];
      bool ok = true;
      for (int pos = 0; pos < 3; ++pos) {
        if (pos < i && part[pos] >= m) ok = false;
        if (pos > i && part[pos] > m) ok = false;
      }
      if (!ok) continue;
      if (rng.uniform() < z_value(m) / (B2 * zp)) return {PeelTag::RR, 2 * part[0] - 1, 2 * part[1] - 1};
    }
  }
}

PeelEvent sample_plane_event(std::int64_t p, Rng& rng) {
  if (p < 1) throw std::domain_error("plane kernel needs p >= 1");
  const double top = log_h(p + 1);
  for (;;) {
    PeelEvent e = sample_half_plane(rng);
    std::int64_t q = p + half_perimeter_change(e);
    if (q < 1) continue;
    if (q == p + 1 || rng.uniform() < std::exp(log_h(q) - top)) return e;
  }
}

PeelEvent PeelLaw::sample(Rng& rng) const {
  switch (regime_) {
    case Regime::HalfPlane: return sample_half_plane(rng);
    case Regime::Boltzmann: return sample_boltzmann_event(p_, rng);
    case Regime::Plane: return sample_plane_event(p_, rng);
    case Regime::Fixed: return fixed_;
  }
  return fixed_;
}

}  // namespace qm
