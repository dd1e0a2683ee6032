#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qm {

using Json = nlohmann::ordered_json;

// Error classes surfaced as distinct status codes by the C API and exit codes by the CLI.
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownCommand : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string csv(const std::vector<std::string>& meta) const;
};

std::string fmt(double x);
std::string version();
// $QMAPS_OUT_DIR, else "qmaps_out".
std::string default_out_dir();

// Runs one command. Artifacts land in out_dir as <stem>.csv and <stem>.json (plus any map
// files the command produces); the returned summary is the JSON artifact.
Json run_command(const std::string& command, const Json& params, const std::string& out_dir);
const std::vector<std::string>& commands();

}  // namespace qm
