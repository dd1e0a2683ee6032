#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "enumeration.hpp"
#include "fence.hpp"
#include "peeling.hpp"
#include "small_enum.hpp"
#include "stats.hpp"
#include "surgery_sim.hpp"
#include "zipper.hpp"

namespace fs = std::filesystem;

namespace qm {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string version() { return QMAPS_VERSION; }

std::string default_out_dir() {
  const char* e = std::getenv("QMAPS_OUT_DIR");
  return e && *e ? e : "qmaps_out";
}

std::string Table::csv(const std::vector<std::string>& meta) const {
  std::ostringstream os;
  for (const auto& m : meta) os << "# " << m << '\n';
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
  return os.str();
}

namespace {

template <class... T>
std::vector<std::string> row(const T&... xs) {
  std::vector<std::string> out;
  auto add = [&](const auto& x) {
    using X = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<X, std::string>) out.push_back(x);
    else if constexpr (std::is_same_v<X, const char*>) out.emplace_back(x);
    else if constexpr (std::is_same_v<X, bool>) out.push_back(x ? "1" : "0");
    else if constexpr (std::is_floating_point_v<X>) out.push_back(fmt(x));
    else out.push_back(std::to_string(x));
  };
  (add(xs), ...);
  return out;
}

// Typed, range-checked access to the parameter object; every value read is echoed.
class Params {
 public:
  explicit Params(const Json& j) : j_(j.is_null() ? Json::object() : j) {
    if (!j_.is_object()) throw ParamError("parameters must be a JSON object");
  }
  std::int64_t integer(const std::string& k, std::int64_t def, std::int64_t lo, std::int64_t hi) {
    std::int64_t v = def;
    if (auto it = j_.find(k); it != j_.end()) {
      if (!it->is_number_integer()) throw ParamError(k + " must be an integer");
      v = it->get<std::int64_t>();
    }
    if (v < lo || v > hi)
      throw ParamError(k + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    echo_[k] = v;
    return v;
  }
  std::uint64_t seed() {
    std::uint64_t v = 1;
    if (auto it = j_.find("seed"); it != j_.end()) {
      if (!it->is_number_integer()) throw ParamError("seed must be an integer");
      v = it->get<std::uint64_t>();
    }
    echo_["seed"] = v;
    return v;
  }
  std::string text(const std::string& k, const std::string& def, const std::set<std::string>& allowed = {}) {
    std::string v = def;
    if (auto it = j_.find(k); it != j_.end()) {
      if (!it->is_string()) throw ParamError(k + " must be a string");
      v = it->get<std::string>();
    }
    if (!allowed.empty() && !allowed.count(v)) throw ParamError(k + " = '" + v + "' is not an allowed value");
    echo_[k] = v;
    return v;
  }
  double real(const std::string& k, double def, double lo, double hi) {
    double v = def;
    if (auto it = j_.find(k); it != j_.end()) {
      if (!it->is_number()) throw ParamError(k + " must be a number");
      v = it->get<double>();
    }
    if (!(v >= lo && v <= hi)) throw ParamError(k + " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
    echo_[k] = v;
    return v;
  }
  std::vector<std::int64_t> integers(const std::string& k, std::vector<std::int64_t> def, std::int64_t lo, std::int64_t hi) {
    if (auto it = j_.find(k); it != j_.end()) {
      if (!it->is_array() || it->empty()) throw ParamError(k + " must be a non-empty list");
      def.clear();
      for (const auto& x : *it) {
        if (!x.is_number_integer()) throw ParamError(k + " entries must be integers");
        def.push_back(x.get<std::int64_t>());
      }
    }
    for (auto v : def)
      if (v < lo || v > hi) throw ParamError(k + " entry " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    echo_[k] = def;
    return def;
  }
  std::vector<double> reals(const std::string& k, std::vector<double> def, double lo, double hi) {
    if (auto it = j_.find(k); it != j_.end()) {
      if (!it->is_array() || it->empty()) throw ParamError(k + " must be a non-empty list");
      def.clear();
      for (const auto& x : *it) {
        if (!x.is_number()) throw ParamError(k + " entries must be numbers");
        def.push_back(x.get<double>());
      }
    }
    for (auto v : def)
      if (!(v >= lo && v <= hi)) throw ParamError(k + " entry outside range");
    echo_[k] = def;
    return def;
  }
  // Unread keys are typos or flags of another command.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!echo_.contains(it.key())) throw ParamError("unknown parameter: " + it.key());
  }
  const Json& echo() const { return echo_; }

 private:
  Json j_;
  Json echo_ = Json::object();
};

struct Output {
  Output() = default;
  explicit Output(std::string s) : stem(std::move(s)) {}
  std::string stem;
  Table table;
  Json estimates = Json::object();
  std::map<std::string, std::string> extra_files;  // file name -> contents
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

// Splits "map text ... saw b f e..." into the map and the SAW line.
std::pair<std::string, std::string> split_saw(const std::string& text) {
  auto pos = text.find("\nsaw ");
  if (text.rfind("saw ", 0) == 0) pos = 0;
  else if (pos != std::string::npos) ++pos;
  if (pos == std::string::npos) return {text, ""};
  auto end = text.find('\n', pos);
  return {text.substr(0, pos), text.substr(pos, end == std::string::npos ? std::string::npos : end - pos)};
}

Json mean_json(const MeanSe& m) { return Json{{"mean", m.mean}, {"se", m.se}, {"n", m.n}}; }

Output cmd_enum(Params& P) {
  long n = P.integer("n", 3, 0, 200), p = P.integer("p", 2, 1, 200);
  std::string verify = P.text("verify", "auto", {"auto", "yes", "no"});
  Output o("enum");
  auto c = count_maps(n, p);
  auto z = partition_function(p);
  bool run = verify == "yes" || (verify == "auto" && n <= 4 && p <= 3);
  if (run && (n > kEnumMaxN || p > kEnumMaxP)) throw ParamError("enumeration bound is n <= 5, p <= 4");
  std::string enumerated;
  if (run) {
    ExactInt cnt = 0;
    enumerate_each(static_cast<int>(n), static_cast<int>(p), [&](const PlanarMap&) { ++cnt; });
    enumerated = to_string(cnt);
  }
  o.table.header = {"n", "p", "count", "Z_p_num", "Z_p_den", "enumerated"};
  o.table.rows.push_back({std::to_string(n), std::to_string(p), to_string(c.value), to_string(numer(z)),
                          to_string(denom(z)), enumerated});
  o.estimates["count"] = to_string(c.value);
  o.estimates["outside_domain"] = c.flagged_zero;
  o.estimates["Z_p"] = to_string(numer(z)) + "/" + to_string(denom(z));
  if (run) o.estimates["enumeration_matches"] = enumerated == to_string(c.value);
  return o;
}

Output cmd_oracle(Params& P) {
  std::string action = P.text("action", "verify", {"verify", "enumerate", "growth"});
  Output o("oracle_" + action);
  if (action == "verify") {
    int nm = P.integer("n_max", 4, 0, kEnumMaxN), pm = P.integer("p_max", 3, 1, kEnumMaxP);
    o.table.header = {"n", "p", "enumerated", "formula", "ok"};
    bool all = true;
    for (const auto& r : verify_counts(nm, pm)) {
      o.table.rows.push_back(row(r.n, r.p, to_string(r.enumerated), to_string(r.formula), r.ok));
      all &= r.ok;
    }
    o.estimates["all_ok"] = all;
  } else if (action == "enumerate") {
    int n = P.integer("n", 2, 0, kEnumMaxN), p = P.integer("p", 1, 1, kEnumMaxP);
    o.table.header = {"index", "half_edges", "vertices"};
    std::string maps;
    long idx = 0;
    enumerate_each(n, p, [&](const PlanarMap& m) {
      o.table.rows.push_back(row(idx++, m.live_half_edges(), m.live_vertices()));
      maps += serialize(m) + "\n";
    });
    o.extra_files["oracle_enumerate.maps"] = maps;
    o.estimates["maps"] = idx;
  } else {
    long pm = P.integer("p_max", 3, 1, 50), nm = P.integer("n_max", 12, 1, 400);
    o.table.header = {"p", "n", "count_ratio", "z_ratio", "c_ratio"};
    for (const auto& g : growth_ratio_report(pm, nm)) o.table.rows.push_back(row(g.p, g.n, g.count_ratio, g.z_ratio, g.c_ratio));
    for (long p = 1; p <= pm; ++p) {
      auto m = annealed_saw_mean(1, p - 1 > 0 ? p - 1 : 0);
      o.estimates["annealed_saw_mean_b+f=" + std::to_string(p)] = to_string(numer(m)) + "/" + to_string(denom(m));
    }
  }
  return o;
}

Output cmd_zip(Params& P, bool forward) {
  std::string in = P.text("in", "");
  if (in.empty()) throw ParamError("--in is required");
  std::string text = read_file(in);
  Output o(forward ? "zip" : "unzip");
  try {
    if (forward) {
      int b = P.integer("b", 1, 0, 1 << 20), f = P.integer("f", 1, 1, 1 << 20);
      PlanarMap bm = parse_map(split_saw(text).first);
      if (2 * (b + f) != static_cast<int>(boundary_edges(bm).size())) throw ParamError("b + f must equal the boundary half-length");
      SawMap sm = zip(bm, b, f);
      o.extra_files["zip.map"] = serialize(sm.map) + serialize_saw(sm.saw) + "\n";
      o.table.header = {"b", "f", "half_edges", "vertices"};
      o.table.rows.push_back(row(b, f, sm.map.live_half_edges(), sm.map.live_vertices()));
    } else {
      auto [mt, st] = split_saw(text);
      if (st.empty()) throw ParseError("missing saw line");
      PlanarMap m = parse_map(mt);
      Saw w = parse_saw(st);
      auto errs = validate_saw(m, w);
      if (!errs.empty()) throw ParseError("invalid SAW: " + errs.front());
      PlanarMap bm = unzip(m, w);
      o.extra_files["unzip.map"] = serialize(bm);
      o.table.header = {"b", "f", "half_edges", "vertices"};
      o.table.rows.push_back(row(w.b, w.f, bm.live_half_edges(), bm.live_vertices()));
    }
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ParamError*>(&e)) throw;
    throw ParseError(e.what());
  }
  return o;
}

Output cmd_peel(Params& P) {
  std::string action = P.text("action", "law", {"law", "sample"});
  std::string regime = P.text("regime", "half", {"half", "boltzmann", "plane"});
  long p = P.integer("p", 1, 1, 1 << 20);
  PeelLaw law = regime == "half" ? PeelLaw::half_plane() : regime == "boltzmann" ? PeelLaw::boltzmann(p) : PeelLaw::plane(p);
  Output o("peel_" + action);
  if (action == "law") {
    long ml = P.integer("max_len", 16, 0, 4096);
    if (regime != "half" && p > 64) throw ParamError("atom tables of finite regimes need p <= 64");
    o.table.header = {"event", "params", "probability", "probability_float"};
    ExactRational total = 0;
    for (const auto& a : law.atoms(ml)) {
      total += a.prob;
      o.table.rows.push_back({tag_name(a.event.tag), event_params(a.event), to_string(numer(a.prob)) + "/" + to_string(denom(a.prob)),
                              fmt(to_double(a.prob))});
    }
    o.estimates["listed_mass"] = to_double(total);
    o.estimates["total_mass"] = law.total_mass();
  } else {
    std::int64_t steps = P.integer("steps", 1000, 1, 100000000);
    Rng rng = make_rng(P.seed(), 0x9EE1);
    o.table.header = {"step", "event", "params", "exposed", "swallowed_left", "swallowed_right", "dY"};
    Moments E, S, D;
    for (std::int64_t i = 0; i < steps; ++i) {
      PeelEvent e = law.sample(rng);
      auto a = event_accounting(e);
      E.add(static_cast<double>(a.exposed));
      S.add(static_cast<double>(a.swallowed_left + a.swallowed_right));
      D.add(static_cast<double>(a.dY));
      o.table.rows.push_back(row(i, tag_name(e.tag), event_params(e), a.exposed, a.swallowed_left, a.swallowed_right, a.dY));
    }
    o.estimates["mean_exposed"] = Json{{"mean", E.mean}, {"se", E.se()}};
    o.estimates["mean_swallowed"] = Json{{"mean", S.mean}, {"se", S.se()}};
    o.estimates["mean_dY"] = Json{{"mean", D.mean}, {"se", D.se()}};
  }
  return o;
}

Output cmd_fence(Params& P) {
  std::int64_t k = P.integer("k", 1, 1, 1 << 30);
  std::int64_t n = P.integer("samples", 1000, 1, 100000000);
  std::string mode = P.text("mode", "statistical", {"statistical", "geometric"});
  Rng rng = make_rng(P.seed(), 0xFE0CE);
  Output o("fence");
  o.table.header = {"sample", "T", "right", "left", "length", "truncated"};
  std::vector<double> L, R;
  for (std::int64_t i = 0; i < n; ++i) {
    auto f = mode == "statistical" ? build_fence(k, rng) : build_fence_geometric(k, rng);
    o.table.rows.push_back(row(i, f.T, f.right, f.left, f.length, f.truncated));
    L.push_back(static_cast<double>(f.left));
    R.push_back(static_cast<double>(f.right));
  }
  o.estimates["median_left"] = median(L);
  o.estimates["median_right"] = median(R);
  auto ks = ks_two_sample(L, R);
  o.estimates["ks_left_right"] = Json{{"D", ks.D}, {"p_value", ks.p_value}};
  return o;
}

Output cmd_ywalk(Params& P) {
  std::int64_t steps = P.integer("steps", 100000, 1, 1000000000);
  std::int64_t n = P.integer("samples", 1, 1, 10000000);
  Rng rng = make_rng(P.seed(), 0x7A1C);
  Output o("ywalk");
  o.table.header = {"sample", "final", "infimum", "inf_step", "mean_increment"};
  double s1 = 0, s2 = 0;
  std::int64_t stable = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    auto w = y_walk(steps, rng);
    s1 += w.sum_inc;
    s2 += w.sum_inc2;
    stable += w.inf_step <= steps / 2;
    o.table.rows.push_back(row(i, w.final_value, w.infimum, w.inf_step, w.sum_inc / static_cast<double>(steps)));
  }
  double N = static_cast<double>(steps) * static_cast<double>(n);
  double mean = s1 / N, var = N > 1 ? (s2 - N * mean * mean) / (N - 1) : 0.0;
  o.estimates["mean_increment"] = Json{{"mean", mean}, {"se", std::sqrt(var / N)}, {"target", 0.5}};
  o.estimates["stabilized_fraction"] = static_cast<double>(stable) / static_cast<double>(n);
  return o;
}

Output cmd_fences(Params& P) {
  std::int64_t levels = P.integer("n", 16, 1, 1 << 20);
  std::string var = P.text("variant", "folded", {"folded", "glued"});
  std::int64_t n = P.integer("samples", 1, 1, 10000000);
  Rng rng = make_rng(P.seed(), 0xFE0CE5);
  Output o("fences");
  o.table.header = {"sample", "level", "k", "right", "left", "radius", "truncated"};
  std::vector<double> ratio;
  std::int64_t trunc = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    auto lv = iterate_fences(levels, var == "folded" ? FenceVariant::Folded : FenceVariant::Glued, rng);
    for (size_t j = 0; j < lv.size(); ++j)
      o.table.rows.push_back(row(i, j + 1, lv[j].k, lv[j].right, lv[j].left, lv[j].radius, lv[j].truncated));
    if (static_cast<std::int64_t>(lv.size()) == levels && !lv.back().truncated)
      ratio.push_back(static_cast<double>(lv.back().radius) / static_cast<double>(levels * levels));
    else
      ++trunc;
  }
  o.estimates["median_r_over_n2"] = ratio.empty() ? 0.0 : median(ratio);
  o.estimates["truncated"] = trunc;
  return o;
}

Output cmd_explore(Params& P) {
  Lattice lat = parse_lattice(P.text("lattice", "uihpq", {"uihpq", "uipq", "folded", "glued"}));
  int r = P.integer("r", 8, 0, 4096);
  std::int64_t budget = P.integer("budget", 4000000, 1, 1LL << 40);
  std::int64_t half = P.integer("half", 1, 1, 1 << 20);
  auto t = explore_ball(lat, r, budget, make_rng(P.seed(), 0xE8), half);
  int top = std::min(r, t->r_star());
  Output o("explore");
  o.table.header = {"r", "ball", "inner"};
  if (top >= 0) {
    auto b = t->ball_profile(top), in = t->inner_ball_profile(top);
    for (int q = 0; q <= top; ++q) o.table.rows.push_back(row(q, b[q], in[q]));
  }
  o.estimates["r_star"] = t->r_star();
  o.estimates["faces"] = t->faces();
  o.estimates["truncated"] = t->truncated();
  return o;
}

Json fit_json(const Fit& f) { return Json{{"slope", f.slope}, {"slope_se", f.slope_se}, {"intercept", f.intercept}, {"points", f.n}}; }

Output cmd_experiment(Params& P) {
  std::string kind = P.text("kind", "volume", {"displacement", "volume", "singularity", "covariance"});
  std::uint64_t seed = P.seed();
  std::int64_t budget = P.integer("budget", 4000000, 1, 1LL << 40);
  Output o("experiment_" + kind);
  if (kind == "displacement") {
    std::string var = P.text("variant", "folded", {"folded", "glued"});
    auto grid = P.integers("grid", {16, 32, 64, 128, 256, 512, 1024}, 0, 1 << 16);
    int reps = P.integer("reps", 200, 1, 1000000);
    auto res = displacement_experiment(var == "folded" ? FenceVariant::Folded : FenceVariant::Glued, grid, reps, seed, budget);
    o.table.header = {"rep", "n", "d_lo", "d_hi", "exact", "faces"};
    for (const auto& r : res.rows) o.table.rows.push_back(row(r.rep, r.n, r.lo, r.hi, r.exact(), r.faces));
    Json pts = Json::array();
    for (const auto& p : res.points)
      pts.push_back(Json{{"n", p.n}, {"samples", p.samples}, {"censored", p.censored}, {"median_lo", p.median_lo},
                         {"median_hi", p.median_hi}, {"median_exact", p.median_exact},
                         {"q10_d_over_sqrt_n", p.q10}, {"q50_d_over_sqrt_n", p.q50}, {"q90_d_over_sqrt_n", p.q90}});
    o.estimates["points"] = pts;
    o.estimates["slope_median_lo"] = fit_json(res.slope_lo);
    o.estimates["slope_median_hi"] = fit_json(res.slope_hi);
    o.estimates["monotonicity_violations"] = res.monotonicity_violations;
  } else if (kind == "volume") {
    Lattice lat = parse_lattice(P.text("lattice", "uihpq", {"uihpq", "uipq", "folded", "glued"}));
    auto g64 = P.integers("grid", {4, 8, 16, 32}, 1, 1024);
    std::vector<int> grid(g64.begin(), g64.end());
    int reps = P.integer("reps", 100, 1, 1000000);
    auto res = volume_experiment(lat, grid, reps, seed, budget);
    o.table.header = {"rep", "r", "ball", "inner", "certified"};
    for (const auto& r : res.rows) o.table.rows.push_back(row(r.rep, r.r, r.ball, r.inner, r.certified));
    Json pts = Json::array();
    for (const auto& p : res.points)
      pts.push_back(Json{{"r", p.r}, {"samples", p.samples}, {"censored", p.censored}, {"ball", mean_json(p.ball)},
                         {"inner", mean_json(p.inner)}, {"ball_over_r4", p.normalized}});
    o.estimates["points"] = pts;
    o.estimates["slope"] = fit_json(res.slope);
    o.estimates["monotonicity_violations"] = res.monotonicity_violations;
  } else if (kind == "singularity") {
    auto g64 = P.integers("grid", {2, 4, 8, 16}, 1, 1024);
    std::vector<int> grid(g64.begin(), g64.end());
    auto alphas = P.reals("alphas", {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0}, 0, 1e9);
    int reps = P.integer("reps", 200, 1, 1000000);
    auto res = singularity_experiment(grid, alphas, reps, seed, budget);
    o.table.header = {"r", "alpha", "x_hits", "x_n", "y_hits", "y_n", "x_lo", "x_hi", "y_lo", "y_hi", "separated"};
    for (const auto& r : res.scan)
      o.table.rows.push_back(row(r.r, r.alpha, r.x_hits, r.x_n, r.y_hits, r.y_n, r.x_ci.lo, r.x_ci.hi, r.y_ci.lo, r.y_ci.hi, r.separated()));
    o.estimates["largest_r"] = res.largest_r;
    o.estimates["separated_alpha_found"] = res.separated_alpha_found;
    o.estimates["best_alpha"] = res.best_alpha;
    o.estimates["dominance_checked"] = res.dominance_checked;
    o.estimates["dominance_failures"] = res.dominance_failures;
  } else {
    auto g64 = P.integers("grid", {2, 4, 8, 16}, 1, 1024);
    std::vector<int> grid(g64.begin(), g64.end());
    int reps = P.integer("reps", 300, 2, 1000000);
    int pilot = P.integer("pilot", 100, 2, 1000000);
    auto res = covariance_scan(grid, reps, seed, budget, pilot);
    o.table.header = {"r", "s", "cov_y", "se_y", "cov_x", "se_x"};
    for (size_t i = 0; i < res.grid.size(); ++i)
      for (size_t j = 0; j < res.grid.size(); ++j)
        o.table.rows.push_back(row(res.grid[i], res.grid[j], res.cov_y[i][j], res.se_y[i][j], res.cov_x[i][j], res.se_x[i][j]));
    o.estimates["thresholds_alpha_r"] = res.thresholds;
    o.estimates["censored"] = res.censored;
  }
  return o;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"enum", "oracle", "zip", "unzip", "peel", "fence", "ywalk", "fences", "explore", "experiment"};
  return c;
}

Json run_command(const std::string& command, const Json& params, const std::string& out_dir) {
  Params P(params);
  Output o;
  if (command == "enum") o = cmd_enum(P);
  else if (command == "oracle") o = cmd_oracle(P);
  else if (command == "zip") o = cmd_zip(P, true);
  else if (command == "unzip") o = cmd_zip(P, false);
  else if (command == "peel") o = cmd_peel(P);
  else if (command == "fence") o = cmd_fence(P);
  else if (command == "ywalk") o = cmd_ywalk(P);
  else if (command == "fences") o = cmd_fences(P);
  else if (command == "explore") o = cmd_explore(P);
  else if (command == "experiment") o = cmd_experiment(P);
  else throw UnknownCommand("unknown command: " + command);
  P.finish();

  Json summary = Json::object();
  summary["tool"] = "qmaps";
  summary["version"] = version();
  summary["command"] = command;
  summary["seed"] = P.echo().contains("seed") ? P.echo()["seed"] : Json(nullptr);
  summary["config"] = P.echo();
  summary["rows"] = o.table.rows.size();
  summary["estimates"] = o.estimates;
  Json files = Json::array({o.stem + ".csv", o.stem + ".json"});
  for (const auto& kv : o.extra_files) files.push_back(kv.first);
  summary["artifacts"] = files;

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir);
  std::vector<std::string> meta{"tool=qmaps", "version=" + version(), "command=" + command,
                                "seed=" + (summary["seed"].is_null() ? std::string("none") : summary["seed"].dump()),
                                "config=" + P.echo().dump()};
  fs::path dir(out_dir);
  write_file(dir / (o.stem + ".csv"), o.table.csv(meta));
  write_file(dir / (o.stem + ".json"), summary.dump(2) + "\n");
  for (const auto& [name, text] : o.extra_files) write_file(dir / name, text);
  return summary;
}

}  // namespace qm
