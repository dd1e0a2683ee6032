#include "truncation.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qm {

std::string lattice_name(Lattice l) {
  switch (l) {
    case Lattice::UIHPQ: return "uihpq";
    case Lattice::UIPQ: return "uipq";
    case Lattice::Folded: return "folded";
    case Lattice::Glued: return "glued";
  }
  return "?";
}

Lattice parse_lattice(const std::string& s) {
  if (s == "uihpq") return Lattice::UIHPQ;
  if (s == "uipq") return Lattice::UIPQ;
  if (s == "folded") return Lattice::Folded;
  if (s == "glued") return Lattice::Glued;
  throw std::invalid_argument("unknown lattice: " + s);
}

Truncation::Truncation(Lattice lattice, Rng rng, std::int64_t budget, std::int64_t uipq_half)
    : lattice_(lattice), rng_(rng), budget_(budget) {
  if (lattice == Lattice::UIPQ)
    pm_ = PeelMap::polygon(uipq_half, HoleLaw::Plane);
  else
    pm_ = PeelMap::half_planes(lattice == Lattice::Glued ? 2 : 1, 2);
  for (size_t li = 0; li < pm_.lines.size(); ++li) {
    const Line& ln = pm_.lines[li];
    for (std::int64_t i = ln.lo; i <= ln.hi; ++i) attach_boundary(ln.vertex(i), static_cast<int>(li), i);
  }
  for (int v = 0; v < pm_.m.num_vertex_slots(); ++v)
    if (static_cast<int>(metric_of_.size()) <= v || metric_of_[v] < 0) add_geometric(v);
  pm_.on_boundary_vertex = [this](int v, int line, std::int64_t index) { on_new_boundary(v, line, index); };
  int origin = metric_of_[pm_.m.origin[pm_.m.root]];
  set_label(origin, 0);
  for (int h = 0; h < pm_.m.num_half_edges(); ++h)
    if (pm_.m.alive(h)) relax_edge(h);
  propagate();
}

std::int64_t Truncation::boundary_key(int line, std::int64_t index) const {
  switch (lattice_) {
    case Lattice::Folded: return index < 0 ? -index : index;
    case Lattice::Glued: return index;
    default: return index * 4 + line;
  }
}

void Truncation::add_geometric(int v) {
  if (static_cast<int>(metric_of_.size()) <= v) metric_of_.resize(v + 1, -1);
  int id = static_cast<int>(label_.size());
  metric_of_[v] = id;
  copies_.push_back({v, -1});
  label_.push_back(kUnlabelled);
  on_line_.push_back(0);
}

void Truncation::on_new_boundary(int v, int line, std::int64_t index) {
  attach_boundary(v, line, index);
  relax_edge(pm_.lines[line].ext(index > 0 ? index - 1 : index));
  // the identified copy must exist, or its faces would go unnoticed by the frontier test
  if (lattice_ == Lattice::Folded) {
    while (pm_.lines[0].lo > -index) pm_.extend_left(0);
    while (pm_.lines[0].hi < -index) pm_.extend_right(0);
  } else if (lattice_ == Lattice::Glued) {
    int other = 1 - line;
    while (pm_.lines[other].hi < index) pm_.extend_right(other);
    while (pm_.lines[other].lo > index) pm_.extend_left(other);
  }
}

void Truncation::attach_boundary(int v, int line, std::int64_t index) {
  if (static_cast<int>(metric_of_.size()) <= v) metric_of_.resize(v + 1, -1);
  auto key = boundary_key(line, index);
  auto it = key_to_metric_.find(key);
  if (it == key_to_metric_.end()) {
    add_geometric(v);
    key_to_metric_[key] = metric_of_[v];
  } else {
    metric_of_[v] = it->second;
    copies_[it->second][1] = v;
  }
  on_line_[metric_of_[v]] = 1;
}

template <class F>
void Truncation::for_each_out(int metric, F&& f) const {
  for (int g : copies_[metric]) {
    if (g < 0) continue;
    int h0 = pm_.m.vrep[g];
    if (h0 < 0) continue;
    int h = h0;
    do {
      f(h);
      h = pm_.m.sigma(h);
    } while (h != h0);
  }
}

void Truncation::push_bucket(int metric) {
  int l = label_[metric];
  if (static_cast<int>(buckets_.size()) <= l) buckets_.resize(l + 1);
  buckets_[l].push_back(metric);
  if (static_cast<size_t>(l) < cursor_) cursor_ = l;
}

void Truncation::set_label(int metric, int value) {
  label_[metric] = value;
  queue_.push_back(metric);
  push_bucket(metric);
}

void Truncation::relax_edge(int h) {
  const auto& m = pm_.m;
  if (m.is_virtual(h)) return;
  int a = metric_of_[m.origin[h]], b = metric_of_[m.head(h)];
  if (label_[a] != kUnlabelled && label_[a] + 1 < label_[b]) set_label(b, label_[a] + 1);
  if (label_[b] != kUnlabelled && label_[b] + 1 < label_[a]) set_label(a, label_[b] + 1);
}

void Truncation::propagate() {
  while (!queue_.empty()) {
    int x = queue_.back();
    queue_.pop_back();
    for_each_out(x, [&](int h) { relax_edge(h); });
  }
}

int Truncation::frontier_edge(int metric) const {
  const auto& m = pm_.m;
  int found = -1;
  for (int g : copies_[metric]) {
    if (g < 0 || found >= 0) continue;
    int h0 = m.vrep[g];
    if (h0 < 0) continue;
    int h = h0;
    do {
      if (!m.is_virtual(h)) {
        if (m.kind_of(h) == FaceKind::Hole) return h;
        int t = m.twin[h];
        if (m.kind_of(t) == FaceKind::Hole) return t;
      }
      h = m.sigma(h);
    } while (h != h0);
  }
  return found;
}

bool Truncation::is_frontier(int metric) const { return frontier_edge(metric) >= 0; }

int Truncation::min_frontier_label() {
  while (cursor_ < buckets_.size()) {
    auto& b = buckets_[cursor_];
    while (!b.empty()) {
      int x = b.back();
      if (label_[x] == static_cast<int>(cursor_)) {
        int h = frontier_edge(x);
        if (h >= 0) {
          top_edge_ = h;
          return static_cast<int>(cursor_);
        }
      }
      b.pop_back();
    }
    ++cursor_;
  }
  return kUnlabelled;
}

bool Truncation::step() {
  if (truncated_) return false;
  int l = min_frontier_label();
  if (l == kUnlabelled) return false;
  int h = top_edge_;
  int f = pm_.m.face[h];
  const HoleInfo info = pm_.hole[f];
  PeelEvent ev;
  switch (info.law) {
    case HoleLaw::HalfPlane: ev = sample_half_plane(rng_); break;
    case HoleLaw::Plane: ev = sample_plane_event(info.half, rng_); break;
    case HoleLaw::Boltzmann: ev = sample_boltzmann_event(info.half, rng_); break;
  }
  if (ev.tag == PeelTag::Stop) {
    pm_.collapse(h);
    return true;
  }
  if (pm_.faces_revealed + 1 + swallowed(ev) > budget_) {
    truncated_ = true;
    return false;
  }
  int before = pm_.m.num_vertex_slots();
  auto res = pm_.peel(h, ev);
  for (int v = before; v < pm_.m.num_vertex_slots(); ++v)
    if (static_cast<int>(metric_of_.size()) <= v || metric_of_[v] < 0) add_geometric(v);
  for (int s : res.side) relax_edge(s);
  propagate();
  return true;
}

bool Truncation::grow(int r_target) {
  while (min_frontier_label() <= r_target)
    if (!step()) return false;
  return true;
}

int Truncation::boundary_metric(std::int64_t i, int line) {
  while (pm_.lines[line].hi < i) pm_.extend_right(line);
  while (pm_.lines[line].lo > i) pm_.extend_left(line);
  propagate();
  return metric_of_[pm_.lines[line].vertex(i)];
}

bool Truncation::certify_boundary(const std::vector<std::int64_t>& indices, int line) {
  std::vector<int> ms;
  for (auto i : indices) ms.push_back(boundary_metric(i, line));
  for (;;) {
    int worst = 0;
    for (int x : ms) worst = std::max(worst, label_[x]);
    if (worst <= min_frontier_label()) return true;
    if (!step()) return false;
  }
}

std::vector<std::int64_t> Truncation::ball_profile(int r_max) const {
  const auto& m = pm_.m;
  std::vector<int> entry(label_.size(), kUnlabelled);
  for (size_t f = 0; f < m.faces.size(); ++f) {
    if (m.faces[f].kind != FaceKind::Inner) continue;
    int a = m.faces[f].anchor, h = a, lo = kUnlabelled;
    do lo = std::min(lo, label_[metric_of_[m.origin[h]]]), h = m.fnext[h]; while (h != a);
    do {
      int& e = entry[metric_of_[m.origin[h]]];
      e = std::min(e, lo);
      h = m.fnext[h];
    } while (h != a);
  }
  entry[metric_of_[m.origin[m.root]]] = 0;
  entry[metric_of_[m.head(m.root)]] = 0;
  std::vector<std::int64_t> prof(r_max + 1, 0);
  for (size_t x = 0; x < entry.size(); ++x)
    if (entry[x] <= r_max) ++prof[entry[x]];
  for (int r = 1; r <= r_max; ++r) prof[r] += prof[r - 1];
  return prof;
}

std::vector<std::int64_t> Truncation::inner_ball_profile(int r_max) const {
  const auto& m = pm_.m;
  std::vector<int> entry(label_.size(), kUnlabelled);
  for (size_t f = 0; f < m.faces.size(); ++f) {
    if (m.faces[f].kind != FaceKind::Inner) continue;
    int a = m.faces[f].anchor, h = a, lo = kUnlabelled;
    do lo = std::min(lo, label_[metric_of_[m.origin[h]]]), h = m.fnext[h]; while (h != a);
    do {
      int& e = entry[metric_of_[m.origin[h]]];
      e = std::min(e, lo);
      h = m.fnext[h];
    } while (h != a);
  }
  std::vector<std::int64_t> prof(r_max + 1, 0);
  for (size_t x = 0; x < entry.size(); ++x)
    if (!on_line_[x] && entry[x] <= r_max) ++prof[entry[x]];
  for (int r = 1; r <= r_max; ++r) prof[r] += prof[r - 1];
  return prof;
}

std::vector<int> Truncation::half_distances(int line) const {
  const auto& m = pm_.m;
  std::vector<int> d(m.num_vertex_slots(), -1);
  int s = pm_.lines[line].vertex(0);
  d[s] = 0;
  std::deque<int> q{s};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    int h0 = m.vrep[v], h = h0;
    if (h0 < 0) continue;
    do {
      if (!m.is_virtual(h) && d[m.head(h)] < 0) d[m.head(h)] = d[v] + 1, q.push_back(m.head(h));
      h = m.sigma(h);
    } while (h != h0);
  }
  return d;
}

std::vector<std::int64_t> Truncation::half_inner_ball_profile(int line, int r_max) const {
  const auto& m = pm_.m;
  auto d = half_distances(line);
  std::vector<int> entry(m.num_vertex_slots(), kUnlabelled);
  for (size_t f = 0; f < m.faces.size(); ++f) {
    if (m.faces[f].kind != FaceKind::Inner) continue;
    int a = m.faces[f].anchor, h = a, lo = kUnlabelled;
    if (d[m.origin[a]] < 0) continue;
    do lo = std::min(lo, d[m.origin[h]]), h = m.fnext[h]; while (h != a);
    do {
      int& e = entry[m.origin[h]];
      e = std::min(e, lo);
      h = m.fnext[h];
    } while (h != a);
  }
  std::vector<std::int64_t> prof(r_max + 1, 0);
  for (int v = 0; v < m.num_vertex_slots(); ++v)
    if (!on_line_[metric_of_[v]] && entry[v] <= r_max) ++prof[entry[v]];
  for (int r = 1; r <= r_max; ++r) prof[r] += prof[r - 1];
  return prof;
}

}  // namespace qm
