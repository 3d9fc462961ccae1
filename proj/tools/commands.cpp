#include "commands.hpp"

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "forest/approx.hpp"
#include "forest/balancer.hpp"
#include "forest/colouring.hpp"
#include "forest/graph.hpp"
#include "forest/oracle.hpp"
#include "forest/random.hpp"

namespace forest::cli {

namespace {

// Input problems map to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream outFile(path, std::ios::binary);
  if (!outFile) throw InputError("cannot write " + path);
  outFile << bytes;
}

// graph6 when the first non-blank line is a single token, an edge list
// otherwise. Throws InputError for anything that is not a connected cubic
// graph.
CubicGraph load_graph(const std::string& path, std::string* raw = nullptr) {
  if (path.empty()) throw InputError("--input is required");
  const std::string text = read_file(path);
  if (raw) *raw = text;
  std::istringstream is(text);
  std::string first;
  while (std::getline(is, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
  }
  try {
    const bool graph6 = first.find_first_of(" \t") == std::string::npos && !first.empty() &&
                        first[0] != '#';
    CubicGraph g = graph6 ? parse_graph6(first) : parse_edge_list(text);
    if (!is_connected(g)) throw InputError("input graph is not connected");
    return g;
  } catch (const GraphError& e) {
    throw InputError(std::string("invalid input graph: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid input graph: ") + e.what());
  }
}

// Writes to o.output, or to `out` when no path is given.
void emit(const Options& o, std::ostream& out, const std::string& bytes) {
  if (o.output.empty())
    out << bytes;
  else
    write_file(o.output, bytes);
}

void write_manifest(const Options& o, const RunManifest& m) {
  std::string path = o.manifest;
  if (path.empty() && !o.output.empty()) path = o.output + ".manifest.json";
  if (path.empty()) return;
  write_file(path, m.to_json().dump(2) + "\n");
}

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_color_mt("forest");
    const char* env = std::getenv("FOREST_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return log;
}

int data_lines(const std::string& text) {
  int count = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") != std::string::npos) ++count;
  }
  return count;
}

// First reason chi fails to split into isomorphic linear forests, or empty.
std::string witness(const Colouring& chi) {
  const Graph& g = chi.graph();
  for (EdgeId e = 0; e < chi.size(); ++e)
    if (chi[e] == Colour::Uncoloured)
      return "edge " + std::to_string(e) + " (" + std::to_string(g.edge(e).u) + "," +
             std::to_string(g.edge(e).v) + ") is uncoloured";
  const ComponentSet comps = monochromatic_components(chi);
  if (!comps.monochromaticVertices.empty()) {
    const Vertex v = comps.monochromaticVertices.front();
    return "vertex " + std::to_string(v) + " has three edges of colour " +
           colour_char(chi[g.incident(v)[0].edge]);
  }
  for (const auto& k : comps.components)
    if (k.shape == MonoComponent::Shape::Cycle) {
      std::ostringstream os;
      os << "monochromatic " << colour_char(k.colour) << " cycle through vertices";
      for (Vertex v : k.vertices) os << ' ' << v;
      return os.str();
    }
  const ComponentProfile p = profile(comps);
  if (p.edges(Colour::Red) != p.edges(Colour::Blue))
    return "edge counts differ: red " + std::to_string(p.edges(Colour::Red)) + ", blue " +
           std::to_string(p.edges(Colour::Blue));
  for (int t = 1; t <= p.max_length(); ++t)
    if (p.count(Colour::Red, t) != p.count(Colour::Blue, t))
      return "paths of length " + std::to_string(t) + ": red " +
             std::to_string(p.count(Colour::Red, t)) + ", blue " +
             std::to_string(p.count(Colour::Blue, t));
  return {};
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

int reduce_csv(const Options& o, std::ostream& out) {
  std::istringstream is(read_file(o.reduce));
  std::string line;
  if (!std::getline(is, line) || line.rfind("n,seed,", 0) != 0)
    throw InputError(o.reduce + ": not an experiment CSV");
  std::map<long, std::vector<std::vector<double>>> byN;  // n -> columns 2..5
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() != 6) throw InputError(o.reduce + ": row with " + std::to_string(cells.size()) + " cells");
    auto& cols = byN[static_cast<long>(cells[0])];
    cols.resize(4);
    for (int c = 0; c < 4; ++c) cols[static_cast<std::size_t>(c)].push_back(cells[static_cast<std::size_t>(c) + 2]);
  }
  static const char* names[] = {"maxCompLen", "maxImbalance", "q2Violations", "runtimeMs"};
  out << "n,column,count,p50,p90,p95,max\n";
  for (const auto& [n, cols] : byN)
    for (int c = 0; c < 4; ++c) {
      const auto& v = cols[static_cast<std::size_t>(c)];
      out << n << ',' << names[c] << ',' << v.size() << ',' << quantile(v, 0.5) << ','
          << quantile(v, 0.9) << ',' << quantile(v, 0.95) << ',' << quantile(v, 1.0) << '\n';
    }
  return kSuccess;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kMethodFailure;
  }
}

}  // namespace

// ------------------------------------------------------------- manifest

nlohmann::json RunManifest::to_json() const {
  return {{"command", command}, {"arguments", arguments}, {"config", config},
          {"seed", seed},       {"inputDigest", inputDigest}, {"outputDigest", outputDigest},
          {"exitCode", exitCode}, {"outcome", outcome}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.arguments = j.at("arguments").get<std::vector<std::string>>();
  m.config = j.at("config").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.inputDigest = j.at("inputDigest").get<std::string>();
  m.outputDigest = j.at("outputDigest").get<std::string>();
  m.exitCode = j.at("exitCode").get<int>();
  m.outcome = j.at("outcome").get<std::string>();
  return m;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return os.str();
}

std::pair<int, int> parse_ell_range(const std::string& text) {
  int lo = 0, hi = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream is(text);
  if (!(is >> lo)) throw InputError("bad --ell-range '" + text + "'");
  if (is >> sep1) {
    if (sep1 == '.' && !(is >> sep2 && sep2 == '.')) throw InputError("bad --ell-range '" + text + "'");
    if (sep1 != '.' && sep1 != '-' && sep1 != ':') throw InputError("bad --ell-range '" + text + "'");
    if (!(is >> hi)) throw InputError("bad --ell-range '" + text + "'");
  } else {
    hi = lo;
  }
  if (lo < 3 || hi < lo) throw InputError("--ell-range must satisfy 3 <= lo <= hi");
  return {lo, hi};
}

Config make_config(const Options& o, int n) {
  if (o.profile != "desk" && o.profile != "paper")
    throw InputError("--profile must be 'paper' or 'desk'");
  Config c = o.profile == "paper" ? Config::paper(n) : Config::desk(n);
  c.seed = o.seed;
  if (o.ellRange) std::tie(c.ellMin, c.ellMax) = *o.ellRange;
  c.validate();
  return c;
}

// ------------------------------------------------------------- commands

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest m{"generate", o.arguments, {}, o.seed, {}, {}, 0, {}};
  const int code = guarded(err, [&] {
    if (o.n.size() != 1) throw InputError("generate takes exactly one --n");
    const int n = o.n.front();
    if (n < 4 || n % 2 != 0) throw InputError("n must be even and at least 4, got " + std::to_string(n));
    if (o.format != "graph6" && o.format != "edges") throw InputError("--format must be graph6 or edges");
    // Redraw (deterministically) until connected.
    CubicGraph g;
    for (std::uint64_t k = 0;; ++k) {
      g = random_cubic(n, k == 0 ? o.seed : sub_seed(o.seed, 0x901, k));
      if (is_connected(g)) break;
    }
    const std::string bytes = o.format == "graph6" ? to_graph6(g) + "\n" : to_edge_list(g);
    emit(o, out, bytes);
    m.outputDigest = sha256_hex(bytes);
    m.outcome = "n=" + std::to_string(n) + " edges=" + std::to_string(g.edge_count());
    logger()->info("generated n={} seed={}", n, o.seed);
    return int{kSuccess};
  });
  m.exitCode = code;
  if (code == kSuccess) write_manifest(o, m);
  return code;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest m{"decompose", o.arguments, {}, o.seed, {}, {}, 0, {}};
  const int code = guarded(err, [&] {
    std::string raw;
    const CubicGraph g = load_graph(o.input, &raw);
    m.inputDigest = sha256_hex(raw);
    const int n = g.vertex_count();
    if (n % 4 != 0) {
      err << "failure: n = " << n << " is 2 mod 4; the " << g.edge_count()
          << " edges cannot split evenly (odd total imbalance)\n";
      m.outcome = "parity";
      return int{kMethodFailure};
    }
    const Config cfg = make_config(o, n);
    m.config = cfg.describe();
    const auto t0 = std::chrono::steady_clock::now();
    ExactRun r = run_exact(g, cfg, o.seed);
    logger()->info("run_exact n={} seed={} took {} ms", n, o.seed,
                   std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
    const std::string colouring = to_text(r.chi);
    const std::string cert = r.certificate.to_text();
    if (!o.certificate.empty()) {
      emit(o, out, colouring);
      write_file(o.certificate, cert);
    } else if (!o.output.empty()) {
      emit(o, out, colouring);
      write_file(o.output + ".cert", cert);
    } else {
      // Certificate as comment lines, which the colouring parser skips.
      std::ostringstream os;
      os << colouring;
      std::istringstream cs(cert);
      for (std::string line; std::getline(cs, line);) os << "# " << line << '\n';
      out << os.str();
    }
    m.outputDigest = sha256_hex(colouring + cert);
    m.outcome = r.certificate.success ? "isomorphic linear forests" : r.certificate.failure;
    if (!r.certificate.success) {
      err << "failure: " << r.certificate.failure << '\n';
      return int{kMethodFailure};
    }
    return int{kSuccess};
  });
  m.exitCode = code;
  if (code != kInputError) write_manifest(o, m);
  return code;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CubicGraph g = load_graph(o.input);
    if (o.colouring.empty()) throw InputError("--colouring is required");
    const std::string text = read_file(o.colouring);
    const int listed = data_lines(text);
    if (listed != g.edge_count())
      throw InputError("colouring lists " + std::to_string(listed) + " edges, the graph has " +
                       std::to_string(g.edge_count()));
    Colouring chi(g);
    try {
      chi = parse_colouring(g, text);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (const std::string w = witness(chi); !w.empty()) {
      err << "rejected: " << w << '\n';
      return int{kMethodFailure};
    }
    const ComponentProfile p = profile(chi);
    if (!o.certificate.empty()) {
      Certificate cert;
      try {
        cert = Certificate::from_text(read_file(o.certificate));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (!cert.success || !cert.isomorphic) {
        err << "rejected: certificate does not claim success\n";
        return int{kMethodFailure};
      }
      if (!(cert.profile == p)) {
        err << "rejected: certificate profile " << to_string(cert.profile) << " differs from the colouring's "
            << to_string(p) << '\n';
        return int{kMethodFailure};
      }
    }
    out << "verified: isomorphic linear forests " << to_string(p) << '\n';
    return int{kSuccess};
  });
}

int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.reduce.empty()) return guarded(err, [&] { return reduce_csv(o, out); });
  RunManifest m{"experiment", o.arguments, {}, o.seed, {}, {}, 0, {}};
  const int code = guarded(err, [&] {
    if (o.n.empty()) throw InputError("experiment needs at least one --n");
    if (o.trials < 1) throw InputError("--trials must be positive");
    for (int n : o.n)
      if (n < 4 || n % 2 != 0) throw InputError("n must be even and at least 4, got " + std::to_string(n));
    struct Job {
      int n;
      std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int n : o.n)
      for (int t = 0; t < o.trials; ++t) jobs.push_back({n, o.seed + static_cast<std::uint64_t>(t)});

    struct Row {
      std::string stable;  // everything but the runtime
      long runtimeMs = 0;
    };
    std::vector<Row> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex sink;
    std::vector<std::string> failures;
    auto worker = [&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        const Job& job = jobs[i];
        try {
          const auto t0 = std::chrono::steady_clock::now();
          const CubicGraph g = random_cubic(job.n, job.seed);
          Config cfg = make_config(o, job.n);
          cfg.seed = job.seed;
          const ApproxRun r = run_approx(g, Colouring(g), cfg);
          const long ms = static_cast<long>(
              std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
          const ComponentProfile p = profile(r.chi);
          std::ostringstream os;
          os << job.n << ',' << job.seed << ',' << p.max_length() << ',' << p.max_imbalance() << ','
             << r.diagnostics.q2Violations;
          std::lock_guard lock(sink);
          rows[i] = {os.str(), ms};
          logger()->debug("trial n={} seed={} done in {} ms", job.n, job.seed, ms);
        } catch (const std::exception& e) {
          std::lock_guard lock(sink);
          failures.push_back("n=" + std::to_string(job.n) + " seed=" + std::to_string(job.seed) + ": " + e.what());
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, o.threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv, stable;
    csv << "n,seed,maxCompLen,maxImbalance,q2Violations,runtimeMs\n";
    for (const auto& r : rows) {
      if (r.stable.empty()) continue;
      csv << r.stable << ',' << r.runtimeMs << '\n';
      stable << r.stable << '\n';
    }
    emit(o, out, csv.str());
    m.config = make_config(o, o.n.front()).describe();
    m.outputDigest = sha256_hex(stable.str());  // runtimes excluded
    m.outcome = std::to_string(jobs.size() - failures.size()) + " rows, " + std::to_string(failures.size()) + " failed";
    for (const auto& f : failures) err << "failure: " << f << '\n';
    return int{failures.empty() ? kSuccess : kMethodFailure};
  });
  m.exitCode = code;
  if (code != kInputError) write_manifest(o, m);
  return code;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest m{"oracle", o.arguments, {}, o.seed, {}, {}, 0, {}};
  const int code = guarded(err, [&] {
    if (o.gadgets) {
      const auto [lo, hi] = o.ellRange.value_or(std::pair{3, 8});
      std::ostringstream os;
      int bad = 0;
      for (GadgetKind kind : {GadgetKind::TypeI, GadgetKind::TypeII})
        for (int ell = lo; ell <= hi; ++ell) {
          const auto rep = verify_gadget_semantics(kind, ell, o.trials, o.seed);
          os << to_string(kind) << ' ' << ell << ' ' << rep.exact << '/' << rep.trials << '\n';
          for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
            const std::string path =
                "counterexample-" + to_string(kind) + "-" + std::to_string(ell) + "-" + std::to_string(i) + ".txt";
            write_file(path, rep.counterexamples[i]);
            err << "mismatch: bundle written to " << path << '\n';
            ++bad;
          }
        }
      emit(o, out, os.str());
      m.outputDigest = sha256_hex(os.str());
      m.outcome = std::to_string(bad) + " mismatches";
      return int{bad == 0 ? kSuccess : kMethodFailure};
    }
    if (o.n.size() != 1) throw InputError("oracle takes exactly one --n (the largest size)");
    const int nMax = o.n.front();
    if (nMax < 4) throw InputError("oracle needs --n of at least 4");
    const OracleReport rep = verify_small_range(nMax, o.samples, o.seed);
    const std::string text = rep.to_text();
    emit(o, out, text);
    m.outputDigest = sha256_hex(text);
    m.outcome = std::to_string(rep.lines.size()) + " graphs, " + std::to_string(rep.failures()) + " not decomposable";
    if (rep.failures() > 0) {
      err << "NOT DECOMPOSABLE: " << rep.failures() << " graph(s), see the report\n";
      return int{kMethodFailure};
    }
    return int{kSuccess};
  });
  m.exitCode = code;
  if (code != kInputError) write_manifest(o, m);
  return code;
}

// ------------------------------------------------------------- dispatch

int run(int argc, char** argv) {
  CLI::App app{"Splits cubic graphs into two isomorphic linear forests."};
  app.require_subcommand(1);
  Options o;
  std::string ellRange;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "root seed");
    sub->add_option("--output", o.output, "output file (stdout when omitted)");
    sub->add_option("--manifest", o.manifest, "run manifest path (default: <output>.manifest.json)");
    sub->add_option("--profile", o.profile, "threshold profile")->check(CLI::IsMember({"paper", "desk"}));
    sub->add_option("--ell-range", ellRange, "gadget lengths, e.g. 3..4");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("generate", "random connected cubic graph");
  common(gen);
  gen->add_option("--n", o.n, "vertex count")->required()->expected(1);
  gen->add_option("--format", o.format, "graph6 or edges")->check(CLI::IsMember({"graph6", "edges"}));

  auto* dec = app.add_subcommand("decompose", "colour a graph into isomorphic linear forests");
  common(dec);
  dec->add_option("--input", o.input, "graph (graph6 or edge list)")->required();
  dec->add_option("--certificate", o.certificate, "certificate path (default: <output>.cert)");

  auto* ver = app.add_subcommand("verify", "check a colouring independently");
  common(ver);
  ver->add_option("--input", o.input, "graph (graph6 or edge list)")->required();
  ver->add_option("--colouring", o.colouring, "colouring file")->required();
  ver->add_option("--certificate", o.certificate, "certificate to cross-check");

  auto* exp = app.add_subcommand("experiment", "approximate pipeline trials as CSV");
  common(exp);
  exp->add_option("--n", o.n, "vertex counts")->delimiter(',');
  exp->add_option("--trials", o.trials, "seeds per n")->check(CLI::PositiveNumber);
  exp->add_option("--reduce", o.reduce, "summarise an existing CSV instead of running");

  auto* ora = app.add_subcommand("oracle", "exhaustive checks at small n");
  common(ora);
  ora->add_option("--n", o.n, "largest vertex count (<= 12)")->expected(1);
  ora->add_option("--samples", o.samples, "random graphs at n = 12");
  ora->add_option("--trials", o.trials, "embeddings per gadget length");
  ora->add_flag("--gadgets", o.gadgets, "check gadget swap deltas instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }
  try {
    if (!ellRange.empty()) o.ellRange = parse_ell_range(ellRange);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (ora->parsed() && o.n.empty() && !o.gadgets) o.n = {8};
  if (ora->parsed() && o.gadgets && o.trials == 1) o.trials = 100;

  o.arguments.assign(argv + 1, argv + argc);
  CLI::App* chosen = app.get_subcommands().front();
  int code = kSuccess;
  if (chosen == gen) code = cmd_generate(o, std::cout, std::cerr);
  if (chosen == dec) code = cmd_decompose(o, std::cout, std::cerr);
  if (chosen == ver) code = cmd_verify(o, std::cout, std::cerr);
  if (chosen == exp) code = cmd_experiment(o, std::cout, std::cerr);
  if (chosen == ora) code = cmd_oracle(o, std::cout, std::cerr);
  return code;
}

}  // namespace forest::cli
