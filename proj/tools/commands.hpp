#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "forest/config.hpp"

namespace forest::cli {

enum ExitCode : int { kSuccess = 0, kMethodFailure = 2, kInputError = 3 };

struct Options {
  std::string input, output, colouring, certificate, manifest;
  std::string profile = "desk";  // or "paper"
  std::string format = "graph6";  // generate: graph6 or edges
  std::string reduce;             // experiment: summarise an existing CSV
  std::uint64_t seed = 1;
  std::vector<int> n;
  int trials = 1;
  int threads = 1;
  int samples = 200;
  std::optional<std::pair<int, int>> ellRange;
  bool gadgets = false;  // oracle: gadget semantics instead of the graph sweep
  std::vector<std::string> arguments;  // recorded in the manifest
};

// Enough to rerun a command and compare its outputs byte for byte.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string config;  // Config::describe of the run
  std::uint64_t seed = 0;
  std::string inputDigest, outputDigest;  // SHA-256 hex, empty when absent
  int exitCode = 0;
  std::string outcome;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

std::string sha256_hex(const std::string& bytes);

// "3..8", "3-8" or "5".
std::pair<int, int> parse_ell_range(const std::string& text);

Config make_config(const Options& o, int n);

// Each command writes results to o.output (stdout when empty) and
// diagnostics to `err`, and returns an ExitCode.
int cmd_generate(const Options& o, std::ostream& out, std::ostream& err);
int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& o, std::ostream& out, std::ostream& err);
int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err);
int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err);

// Argument parsing and dispatch; what main() calls.
int run(int argc, char** argv);

}  // namespace forest::cli
