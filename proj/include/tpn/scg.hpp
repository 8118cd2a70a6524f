#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "tpn/dbm.hpp"
#include "tpn/net.hpp"

namespace tpn {

// One state class: a marking together with the firing domain of the enabled
// transitions. `enabled` lists the transitions in ascending index order;
// domain variable 0 is the reference point and variable i+1 tracks enabled[i].
// The domain is kept in closed canonical form, so structural equality of
// (marking, domain) is class equality.
struct StateClass {
  Marking marking;
  std::vector<std::uint32_t> enabled;
  Dbm domain;
};

struct ScEdge {
  std::uint32_t src = 0;
  std::uint32_t rel = 0;  // index into the relation of the net being explored
  std::uint32_t dst = 0;
};

struct ScGraph {
  std::vector<StateClass> classes;
  std::vector<ScEdge> edges;                         // grouped by src, ascending
  std::vector<std::uint32_t> first_edge;             // classes.size()+1 offsets into edges
  std::uint32_t out_degree(std::uint32_t c) const { return first_edge[c + 1] - first_edge[c]; }
};

struct ScgStats {
  std::size_t classes = 0;
  std::size_t markings = 0;  // distinct markings
  std::size_t domains = 0;   // distinct canonical firing domains
  std::size_t edges = 0;
};

struct BuildLimits {
  std::size_t max_classes = std::numeric_limits<std::size_t>::max();
  double budget_seconds = std::numeric_limits<double>::infinity();
  unsigned threads = 1;
};

struct BuildResult {
  ScGraph graph;
  bool complete = true;      // false when a limit stopped the search
  std::size_t expanded = 0;  // classes[0..expanded) have final successor lists
  double seconds = 0.0;
};

StateClass initial_class(const Ptpn& p);

// Relation indices firable from this class: members enabled and the domain
// extended with "members fire together, first" stays consistent.
std::vector<std::uint32_t> firable_sets(const Ptpn& p, const StateClass& c);

// Successor by firing relation set `rel`; throws ModelError(NotFirable) if the
// set is not firable here.
StateClass successor_class(const Ptpn& p, const StateClass& c, std::uint32_t rel);

bool class_equal(const StateClass& a, const StateClass& b);
std::size_t class_hash(const StateClass& c);

// Breadth-first construction. With threads > 1 the frontier of each level is
// expanded in parallel and merged in deterministic order; the result is
// identical to the single-threaded build.
BuildResult build_scg(const Ptpn& p, const BuildLimits& limits = {});

ScgStats scg_stats(const ScGraph& g);

}  // namespace tpn
