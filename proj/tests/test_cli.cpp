#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"
#include "doctest.h"
#include "forest/graph.hpp"
#include "json.hpp"

using namespace forest;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("forest-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

struct Call {
  int code;
  std::string out, err;
};

template <class F>
Call call(F&& cmd, const cli::Options& o) {
  std::ostringstream out, err;
  const int code = cmd(o, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate: formats, parity errors and reproducibility") {
  TempDir tmp;
  cli::Options o;
  o.n = {16};
  o.seed = 4;
  o.output = tmp.file("g.g6");
  REQUIRE(call(cli::cmd_generate, o).code == cli::kSuccess);
  const std::string first = slurp(o.output);
  CHECK(parse_graph6(first.substr(0, first.size() - 1)).vertex_count() == 16);
  REQUIRE(call(cli::cmd_generate, o).code == cli::kSuccess);
  CHECK(slurp(o.output) == first);

  const auto manifest = nlohmann::json::parse(slurp(o.output + ".manifest.json"));
  const cli::RunManifest m = cli::RunManifest::from_json(manifest);
  CHECK(m.command == "generate");
  CHECK(m.outputDigest == cli::sha256_hex(first));
  CHECK(m.exitCode == 0);

  o.format = "edges";
  o.output.clear();
  const Call edges = call(cli::cmd_generate, o);
  CHECK(edges.code == cli::kSuccess);
  CHECK(parse_edge_list(edges.out).edge_count() == 24);

  o.n = {5};
  const Call odd = call(cli::cmd_generate, o);
  CHECK(odd.code == cli::kInputError);
  CHECK(odd.err.find("error:") != std::string::npos);
}

TEST_CASE("decompose then verify, and tampering is caught") {
  TempDir tmp;
  const CubicGraph g = random_cubic(200, 6);
  spit(tmp.file("g.g6"), to_graph6(g) + "\n");
  cli::Options o;
  o.input = tmp.file("g.g6");
  o.output = tmp.file("g.col");
  o.seed = 2;
  const Call dec = call(cli::cmd_decompose, o);
  REQUIRE_MESSAGE(dec.code == cli::kSuccess, dec.err);
  CHECK(fs::exists(o.output + ".cert"));
  CHECK(fs::exists(o.output + ".manifest.json"));

  cli::Options v;
  v.input = o.input;
  v.colouring = o.output;
  v.certificate = o.output + ".cert";
  const Call ok = call(cli::cmd_verify, v);
  CHECK_MESSAGE(ok.code == cli::kSuccess, ok.err);
  CHECK(ok.out.find("verified") == 0);

  // Flip the colour on the first line.
  std::string col = slurp(o.output);
  const auto pos = col.find_first_of("RB");
  col[pos] = col[pos] == 'R' ? 'B' : 'R';
  spit(tmp.file("bad.col"), col);
  v.colouring = tmp.file("bad.col");
  v.certificate.clear();
  const Call bad = call(cli::cmd_verify, v);
  CHECK(bad.code == cli::kMethodFailure);
  CHECK(bad.err.find("rejected:") != std::string::npos);

  // Too few lines is an input error.
  spit(tmp.file("short.col"), col.substr(0, col.find('\n') + 1));
  v.colouring = tmp.file("short.col");
  CHECK(call(cli::cmd_verify, v).code == cli::kInputError);

  // A certificate whose profile disagrees.
  std::string cert = slurp(o.output + ".cert");
  cert += "paths R 1 999\n";
  spit(tmp.file("bad.cert"), cert);
  v.colouring = o.output;
  v.certificate = tmp.file("bad.cert");
  CHECK(call(cli::cmd_verify, v).code == cli::kMethodFailure);
}

TEST_CASE("decompose: K4 to stdout, parity failure, broken input") {
  TempDir tmp;
  spit(tmp.file("k4.g6"), "C~\n");
  cli::Options o;
  o.input = tmp.file("k4.g6");
  const Call k = call(cli::cmd_decompose, o);
  CHECK(k.code == cli::kSuccess);
  CHECK(k.out.find("# success 1") != std::string::npos);

  spit(tmp.file("k33.g6"), to_graph6(k33()) + "\n");
  o.input = tmp.file("k33.g6");
  const Call six = call(cli::cmd_decompose, o);
  CHECK(six.code == cli::kMethodFailure);
  CHECK(six.err.find("odd total imbalance") != std::string::npos);

  spit(tmp.file("junk.g6"), "not a graph\n");
  o.input = tmp.file("junk.g6");
  CHECK(call(cli::cmd_decompose, o).code == cli::kInputError);
  o.input = tmp.file("missing.g6");
  CHECK(call(cli::cmd_decompose, o).code == cli::kInputError);
}

TEST_CASE("experiment writes a CSV and reduces it") {
  TempDir tmp;
  cli::Options o;
  o.n = {400};
  o.trials = 3;
  o.output = tmp.file("e.csv");
  REQUIRE(call(cli::cmd_experiment, o).code == cli::kSuccess);
  const std::string csv = slurp(o.output);
  CHECK(csv.rfind("n,seed,maxCompLen,maxImbalance,q2Violations,runtimeMs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const std::string digest = cli::RunManifest::from_json(nlohmann::json::parse(slurp(o.output + ".manifest.json"))).outputDigest;
  REQUIRE(call(cli::cmd_experiment, o).code == cli::kSuccess);
  CHECK(cli::RunManifest::from_json(nlohmann::json::parse(slurp(o.output + ".manifest.json"))).outputDigest == digest);

  cli::Options r;
  r.reduce = o.output;
  const Call red = call(cli::cmd_experiment, r);
  CHECK(red.code == cli::kSuccess);
  CHECK(!red.out.empty());

  o.n = {7};
  CHECK(call(cli::cmd_experiment, o).code == cli::kInputError);
}

TEST_CASE("oracle sweep and argument limits") {
  cli::Options o;
  o.n = {4};
  const Call four = call(cli::cmd_oracle, o);
  CHECK(four.code == cli::kSuccess);
  CHECK(std::count(four.out.begin(), four.out.end(), '\n') == 1);
  o.n = {13};
  CHECK(call(cli::cmd_oracle, o).code == cli::kInputError);
}

TEST_CASE("manifest json round trip and helpers") {
  cli::RunManifest m{"verify", {"--input", "x"}, "seed=1\n", 7, "aa", "bb", 2, "rejected"};
  const cli::RunManifest back = cli::RunManifest::from_json(m.to_json());
  CHECK(back.command == m.command);
  CHECK(back.arguments == m.arguments);
  CHECK(back.seed == 7);
  CHECK(back.exitCode == 2);
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cli::parse_ell_range("3..8") == std::pair{3, 8});
  CHECK(cli::parse_ell_range("4-6") == std::pair{4, 6});
  CHECK(cli::parse_ell_range("5") == std::pair{5, 5});
  CHECK_THROWS(cli::parse_ell_range("x"));
}

}  // TEST_SUITE
