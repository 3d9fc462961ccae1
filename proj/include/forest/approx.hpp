#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forest/base_colouring.hpp"
#include "forest/colouring.hpp"
#include "forest/config.hpp"
#include "forest/gadget.hpp"

namespace forest {

// Every randomised step draws from sub-seeds keyed by (seed, stage, stable id),
// so a run is a pure function of its inputs.

// Each G0 component is kept or swapped with probability 1/2; each
// purple/green component is coloured alternately from a random start.
Colouring chi1(const Graph& g, const Colouring& g0, const PurpleGreenColouring& pg,
               std::uint64_t seed);

// One uniformly chosen edge flipped on every monochromatic cycle.
struct CycleFlip {
  std::vector<EdgeId> cycle;  // in cyclic order
  EdgeId flipped = kNoEdge;
};
struct Chi2Result {
  Colouring chi;
  std::vector<CycleFlip> log;
};
Chi2Result chi2(const Colouring& chi1, std::uint64_t seed);

// A monochromatic cycle of chi2 together with the flipped edges lying on it.
struct CyclePetalConfiguration {
  std::vector<EdgeId> core;
  std::vector<int> petals;          // indices into the chi2 log
  std::vector<EdgeId> petalEdges;   // e_1..e_k
  int chosen = -1;                  // index into petals
  EdgeId neighbour = kNoEdge;       // e_i'
};

struct Chi3Result {
  Colouring chi;
  std::vector<CyclePetalConfiguration> configurations;
};
// Throws std::logic_error if two configurations share a vertex.
Chi3Result chi3(const Chi2Result& r, std::uint64_t seed);

struct Chi4Result {
  Colouring chi;
  std::vector<EdgeId> recoloured;
};
Chi4Result chi4(const Colouring& chi3, std::uint64_t seed);

struct PipelineDiagnostics {
  int q1MaxLength = 0;
  std::int64_t q2Violations = 0;
  std::int64_t q3MaxImbalance = 0;
  std::int64_t q4Survivors = 0;
  std::int64_t q4Registered = 0;
  int attempts = 0;
  std::uint64_t seedUsed = 0;

  std::string to_key_values() const;
  static PipelineDiagnostics from_key_values(const std::string& text);
  bool operator==(const PipelineDiagnostics&) const = default;
};

// Short paths of one colour met by many long paths of the other colour.
std::int64_t spider_violations(const Colouring& chi, const Config& cfg);

// Q1 bound applied by the retry loop: 1000 ln n, never below 2c+1.
int approx_length_bound(const Graph& g, const Config& cfg);

struct ApproxRun {
  Colouring chi;
  PipelineDiagnostics diagnostics;
  // Intermediate stages of the accepted attempt, kept for checking.
  Colouring stage1, stage3;
  std::vector<EdgeId> recoloured;
};

// Retries with fresh sub-seeds (at most cfg.attemptCap times) until the
// colouring is a linear forest meeting the length bound. Throws
// std::runtime_error when every attempt fails.
ApproxRun run_approx(const Graph& g, const Colouring& g0, const Config& cfg,
                     const std::vector<GadgetInstance>& registry = {});

}  // namespace forest
