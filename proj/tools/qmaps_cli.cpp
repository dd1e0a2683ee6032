// qmaps command line: thin front end over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmaps/qmaps.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 2, kParam = 3, kIo = 4, kParse = 5, kInternal = 6 };

enum class Kind { Int, Real, Text, IntList, RealList };

struct Opt {
  const char* name;
  Kind kind;
  const char* help;
};

const std::map<std::string, std::pair<const char*, std::vector<Opt>>>& table() {
  static const std::map<std::string, std::pair<const char*, std::vector<Opt>>> t{
      {"enum", {"exact count of rooted quadrangulations with n inner faces and boundary 2p",
                {{"n", Kind::Int, "inner faces"}, {"p", Kind::Int, "boundary half-length"},
                 {"verify", Kind::Text, "auto|yes|no: cross-check by brute-force enumeration"}}}},
      {"oracle", {"brute-force enumeration oracle",
                  {{"action", Kind::Text, "verify|enumerate|growth"}, {"n", Kind::Int, ""}, {"p", Kind::Int, ""},
                   {"n_max", Kind::Int, ""}, {"p_max", Kind::Int, ""}}}},
      {"zip", {"zip a boundary map into a map with a marked SAW",
               {{"in", Kind::Text, "map file"}, {"b", Kind::Int, "backward steps"}, {"f", Kind::Int, "forward steps"}}}},
      {"unzip", {"unzip a map with a marked SAW", {{"in", Kind::Text, "map file with a saw line"}}}},
      {"peel", {"peeling step law: atom table or samples",
                {{"action", Kind::Text, "law|sample"}, {"regime", Kind::Text, "half|boltzmann|plane"},
                 {"p", Kind::Int, "hole half-perimeter"}, {"max_len", Kind::Int, "largest swallowed length listed"},
                 {"steps", Kind::Int, ""}, {"seed", Kind::Int, ""}}}},
      {"fence", {"fences over a boundary segment of length k",
                 {{"k", Kind::Int, ""}, {"samples", Kind::Int, ""}, {"mode", Kind::Text, "statistical|geometric"},
                  {"seed", Kind::Int, ""}}}},
      {"ywalk", {"boundary-length walk of half-plane peeling",
                 {{"steps", Kind::Int, ""}, {"samples", Kind::Int, ""}, {"seed", Kind::Int, ""}}}},
      {"fences", {"iterated fences around the origin",
                  {{"n", Kind::Int, "levels"}, {"variant", Kind::Text, "folded|glued"}, {"samples", Kind::Int, ""},
                   {"seed", Kind::Int, ""}}}},
      {"explore", {"metric ball exploration",
                   {{"lattice", Kind::Text, "uihpq|uipq|folded|glued"}, {"r", Kind::Int, ""}, {"budget", Kind::Int, "face budget"},
                    {"half", Kind::Int, "half-perimeter of the plane root face"}, {"seed", Kind::Int, ""}}}},
      {"experiment", {"surgery experiments",
                      {{"kind", Kind::Text, "displacement|volume|singularity|covariance"}, {"seed", Kind::Int, ""},
                       {"budget", Kind::Int, "face budget per exploration"}, {"reps", Kind::Int, ""},
                       {"grid", Kind::IntList, "comma separated"}, {"variant", Kind::Text, "folded|glued"},
                       {"lattice", Kind::Text, "uihpq|uipq|folded|glued"}, {"alphas", Kind::RealList, "comma separated"},
                       {"pilot", Kind::Int, "pilot replicas for covariance thresholds"}}}},
  };
  return t;
}

struct BadValue {
  std::string msg;
};

Json convert(const std::string& name, Kind kind, const std::string& v) {
  auto bad = [&] { return BadValue{"invalid value for --" + name + ": '" + v + "'"}; };
  auto as_int = [&](const std::string& s) -> Json {
    size_t pos = 0;
    long long x;
    try {
      x = std::stoll(s, &pos);
    } catch (...) {
      throw bad();
    }
    if (pos != s.size()) throw bad();
    return x;
  };
  auto as_real = [&](const std::string& s) -> Json {
    size_t pos = 0;
    double x;
    try {
      x = std::stod(s, &pos);
    } catch (...) {
      throw bad();
    }
    if (pos != s.size()) throw bad();
    return x;
  };
  switch (kind) {
    case Kind::Int: return as_int(v);
    case Kind::Real: return as_real(v);
    case Kind::Text: return v;
    default: {
      Json a = Json::array();
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) a.push_back(kind == Kind::IntList ? as_int(item) : as_real(item));
      if (a.empty()) throw bad();
      return a;
    }
  }
}

int exit_for(qm_status s) {
  switch (s) {
    case QM_OK: return kOk;
    case QM_ERR_ARG: return kParam;
    case QM_ERR_IO: return kIo;
    case QM_ERR_PARSE: return kParse;
    case QM_ERR_UNKNOWN_COMMAND: return kUsage;
    default: return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmaps: random planar quadrangulations"};
  app.set_version_flag("--version", std::string(qm_version()));
  app.require_subcommand(1);
  std::string out, config;
  bool quiet = false, summary = false;
  app.add_option("--out", out, "output directory (default $QMAPS_OUT_DIR or ./qmaps_out)");
  app.add_option("--config", config, "JSON file with parameters; flags override it");
  app.add_flag("-q,--quiet", quiet, "do not print the CSV table");
  app.add_flag("--summary", summary, "print the JSON summary instead of the CSV table");

  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& [cmd, spec] : table()) {
    auto* sub = app.add_subcommand(cmd, spec.first);
    sub->fallthrough();
    for (const auto& o : spec.second) sub->add_option("--" + std::string(o.name), values[cmd][o.name], o.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  Json params = Json::object();
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) {
      std::cerr << "error: cannot read " << config << "\n";
      return kIo;
    }
    try {
      params = Json::parse(in);
    } catch (const std::exception& e) {
      std::cerr << "error: " << config << ": " << e.what() << "\n";
      return kParse;
    }
    if (!params.is_object()) {
      std::cerr << "error: config must be a JSON object\n";
      return kParse;
    }
  }
  try {
    for (const auto& o : table().at(cmd).second)
      if (sub->count("--" + std::string(o.name))) params[o.name] = convert(o.name, o.kind, values[cmd][o.name]);
  } catch (const BadValue& e) {
    std::cerr << "error: " << e.msg << "\n";
    return kParam;
  }

  char* s = nullptr;
  qm_status st = qm_run(cmd.c_str(), params.dump().c_str(), out.empty() ? nullptr : out.c_str(), &s);
  if (st != QM_OK) {
    std::cerr << "error: " << qm_last_error() << "\n";
    return exit_for(st);
  }
  Json sj = Json::parse(s);
  qm_string_free(s);
  if (summary) {
    std::cout << sj.dump(2) << "\n";
  } else if (!quiet) {
    const char* env = std::getenv("QMAPS_OUT_DIR");
    std::string dir = !out.empty() ? out : env && *env ? env : "qmaps_out";
    std::ifstream csv(dir + "/" + sj["artifacts"][0].get<std::string>());
    std::cout << csv.rdbuf();
  }
  return kOk;
}
