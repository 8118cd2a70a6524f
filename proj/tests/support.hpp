#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "tpn/bounds.hpp"
#include "tpn/net.hpp"
#include "tpn/scg.hpp"

namespace testsupport {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(TPN_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Feasibility of a set of difference constraints x_i - x_j <= c (or < c) by
// Fourier-Motzkin elimination. Deliberately avoids shortest paths so it can
// cross-check the DBM closure.

struct DiffConstraint {
  int i, j;
  tpn::Bound bound;  // never infinite
};

inline bool fm_feasible(std::vector<DiffConstraint> cs, int vars) {
  for (int v = vars - 1; v >= 0; --v) {
    std::vector<DiffConstraint> kept, upper, lower;
    for (const auto& c : cs) {
      if (c.i == v && c.j == v) {
        if (c.bound.excludes_zero()) return false;
      } else if (c.i == v) {
        upper.push_back(c);  // x_v - x_j <= c
      } else if (c.j == v) {
        lower.push_back(c);  // x_i - x_v <= c
      } else {
        kept.push_back(c);
      }
    }
    for (const auto& up : upper) {
      for (const auto& lo : lower) {
        // x_i - x_v <= a and x_v - x_j <= b give x_i - x_j <= a + b
        DiffConstraint combined{lo.i, up.j, lo.bound + up.bound};
        if (combined.i == combined.j) {
          if (combined.bound.excludes_zero()) return false;
        } else {
          kept.push_back(combined);
        }
      }
    }
    cs = std::move(kept);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random small nets with closed integer intervals, for oracle cross-checks.

struct GenOpts {
  int max_places = 4;
  int max_transitions = 4;
  std::int64_t max_bound = 5;
  bool labelled = true;  // draw labels from a small shared pool
};

inline tpn::Ptpn random_ptpn(std::mt19937& rng, const GenOpts& opts = {}) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  tpn::NetBuilder b("random");
  int np = pick(1, opts.max_places);
  int nt = pick(1, opts.max_transitions);
  for (int i = 0; i < np; ++i) b.place("p" + std::to_string(i), pick(0, 2));

  static const char* pool[] = {"a", "b", "c"};
  // Lower bounds lean small so behaviour fits comfortably inside the
  // horizon used by discrete-time cross-checks.
  static const int lowers[] = {0, 0, 0, 1, 1, 2};
  for (int i = 0; i < nt; ++i) {
    std::string name = "t" + std::to_string(i);
    std::string label;
    if (opts.labelled && pick(0, 1) == 1) label = pool[pick(0, 2)];
    std::int64_t lo = lowers[pick(0, 5)];
    if (lo > opts.max_bound) lo = opts.max_bound;
    std::int64_t hi = lo + pick(0, static_cast<int>(opts.max_bound - lo));
    b.transition(name, label, tpn::TimeInterval::closed(tpn::Rat(lo), tpn::Rat(hi)));
    int pre = pick(0, 2), post = pick(0, 2);
    std::vector<int> places(np);
    for (int k = 0; k < np; ++k) places[k] = k;
    std::shuffle(places.begin(), places.end(), rng);
    for (int k = 0; k < pre && k < np; ++k) b.pre(name, "p" + std::to_string(places[k]));
    std::shuffle(places.begin(), places.end(), rng);
    for (int k = 0; k < post && k < np; ++k) b.post(name, "p" + std::to_string(places[k]));
  }
  return tpn::lift_to_ptpn(b.build());
}

inline std::set<std::vector<std::uint32_t>> graph_markings(const tpn::ScGraph& g) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& c : g.classes) out.insert(c.marking.tokens);
  return out;
}

}  // namespace testsupport
