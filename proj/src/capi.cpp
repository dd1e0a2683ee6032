#include "qmaps/qmaps.h"

#include <cstdlib>
#include <cstring>
#include <optional>

#include "enumeration.hpp"
#include "runner.hpp"
#include "truncation.hpp"
#include "zipper.hpp"

struct qm_map {
  qm::PlanarMap map;
  std::optional<qm::Saw> saw;
};

namespace {

thread_local std::string g_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
qm_status guard(F&& f) {
  g_error.clear();
  try {
    f();
    return QM_OK;
  } catch (const qm::UnknownCommand& e) {
    g_error = e.what();
    return QM_ERR_UNKNOWN_COMMAND;
  } catch (const qm::ParamError& e) {
    g_error = e.what();
    return QM_ERR_ARG;
  } catch (const qm::IoError& e) {
    g_error = e.what();
    return QM_ERR_IO;
  } catch (const qm::ParseError& e) {
    g_error = e.what();
    return QM_ERR_PARSE;
  } catch (const nlohmann::json::exception& e) {
    g_error = e.what();
    return QM_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return QM_ERR_ARG;
  } catch (const std::exception& e) {
    g_error = e.what();
    return QM_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown failure";
    return QM_ERR_INTERNAL;
  }
}

#define QM_NEED(p)                        \
  if (!(p)) {                             \
    g_error = #p " must not be null";     \
    return QM_ERR_ARG;                    \
  }

}  // namespace

extern "C" {

const char* qm_version(void) {
  static const std::string v = qm::version();
  return v.c_str();
}

const char* qm_last_error(void) { return g_error.c_str(); }

void qm_string_free(char* s) { std::free(s); }

qm_status qm_count_maps(long n, long p, char** out) {
  QM_NEED(out);
  return guard([&] {
    if (p < 1) throw qm::ParamError("p must be at least 1");
    *out = dup(qm::to_string(qm::count_maps(n, p).value));
  });
}

qm_status qm_partition_function(long p, char** out) {
  QM_NEED(out);
  return guard([&] {
    if (p < 1) throw qm::ParamError("p must be at least 1");
    auto z = qm::partition_function(p);
    *out = dup(qm::to_string(qm::numer(z)) + "/" + qm::to_string(qm::denom(z)));
  });
}

qm_status qm_map_parse(const char* text, qm_map** out) {
  QM_NEED(text);
  QM_NEED(out);
  return guard([&] {
    std::string s(text);
    auto pos = s.rfind("saw ", 0) == 0 ? 0 : s.find("\nsaw ");
    auto m = std::make_unique<qm_map>();
    try {
      if (pos == std::string::npos) {
        m->map = qm::parse_map(s);
      } else {
        size_t start = pos == 0 ? 0 : pos + 1;
        m->map = qm::parse_map(s.substr(0, start));
        auto end = s.find('\n', start);
        m->saw = qm::parse_saw(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
        auto errs = qm::validate_saw(m->map, *m->saw);
        if (!errs.empty()) throw qm::ParseError(errs.front());
      }
    } catch (const qm::ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw qm::ParseError(e.what());
    }
    *out = m.release();
  });
}

void qm_map_free(qm_map* m) { delete m; }

qm_status qm_map_serialize(const qm_map* m, char** out) {
  QM_NEED(m);
  QM_NEED(out);
  return guard([&] {
    std::string s = qm::serialize(m->map);
    if (m->saw) s += qm::serialize_saw(*m->saw) + "\n";
    *out = dup(s);
  });
}

int qm_map_half_edges(const qm_map* m) { return m ? m->map.live_half_edges() : -1; }
int qm_map_vertices(const qm_map* m) { return m ? m->map.live_vertices() : -1; }
int qm_map_faces(const qm_map* m) { return m ? m->map.live_faces() : -1; }

qm_status qm_zip(const qm_map* boundary, int b, int f, qm_map** out) {
  QM_NEED(boundary);
  QM_NEED(out);
  return guard([&] {
    if (b < 0 || f < 1) throw qm::ParamError("need b >= 0 and f >= 1");
    if (2 * (b + f) != static_cast<int>(qm::boundary_edges(boundary->map).size()))
      throw qm::ParamError("b + f must equal the boundary half-length");
    auto sm = qm::zip(boundary->map, b, f);
    *out = new qm_map{std::move(sm.map), std::move(sm.saw)};
  });
}

qm_status qm_unzip(const qm_map* with_saw, qm_map** out) {
  QM_NEED(with_saw);
  QM_NEED(out);
  return guard([&] {
    if (!with_saw->saw) throw qm::ParamError("map carries no SAW");
    *out = new qm_map{qm::unzip(with_saw->map, *with_saw->saw), std::nullopt};
  });
}

qm_status qm_run(const char* command, const char* config_json, const char* out_dir, char** summary) {
  QM_NEED(command);
  return guard([&] {
    qm::Json params = config_json && *config_json ? qm::Json::parse(config_json) : qm::Json::object();
    std::string dir = out_dir && *out_dir ? out_dir : qm::default_out_dir();
    auto s = qm::run_command(command, params, dir);
    if (summary) *summary = dup(s.dump(2));
  });
}

const char* const* qm_commands(void) {
  static std::vector<const char*> names = [] {
    std::vector<const char*> v;
    for (const auto& c : qm::commands()) v.push_back(c.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return names.data();
}

}
