#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tpn/scg.hpp"

namespace tpn {

// What a good run means for a composed net: the label announcing success, the
// label announcing that the deadline passed, and the markings in which
// stopping is acceptable (every listed place holds at least the given count).
struct AcceptanceSpec {
  std::string success_label = "SUCCESS";
  std::string timeout_label = "TIMEOUT";
  std::vector<std::pair<std::string, std::uint32_t>> accepting_at_least;
};

enum class Verdict { Success, TimeOut, TimeLock, Inconclusive };
std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::Inconclusive;
  bool complete = true;
  std::optional<std::uint32_t> witness;  // offending / deciding class
  std::vector<std::uint32_t> path;       // root to witness, inclusive
  std::string detail;
};

// Classes with no outgoing edge, restricted to the expanded prefix so the
// answer stays sound on truncated graphs.
std::vector<std::uint32_t> dead_classes(const ScGraph& g, std::size_t expanded);

bool label_reachable(const Ptpn& p, const ScGraph& g, const std::string& label);

// True when every maximal run from the root eventually fires a set with this
// label: the subgraph of other edges has no reachable cycle and no reachable
// class that is dead in the full graph. Requires a complete graph.
bool label_inevitable(const Ptpn& p, const ScGraph& g, const std::string& label);

// Verdict precedence: a reachable timeout beats everything, then a reachable
// non-accepting dead class, then inevitable success. Reachability verdicts are
// valid even on truncated graphs; Success requires completeness.
VerdictReport verdict_of(const Ptpn& p, const BuildResult& built, const AcceptanceSpec& spec);

// Reference semantics on whole ticks. Only closed intervals with integer
// endpoints are supported; clocks advance one tick at a time, never past an
// enabled transition's upper bound, and firings are instantaneous. Visible
// traces carry firing labels plus "@tick" per elapsed tick; silent firings
// contribute nothing. The trace set is prefix-closed.
struct OracleLimits {
  std::uint64_t horizon_ticks = 0;        // marking search stops after this many ticks
  std::size_t max_trace_length = 0;       // trace symbols (labels and ticks) per trace
  std::uint64_t max_states = 1'000'000;   // distinct (marking, clocks) states
  bool collect_traces = false;
};

struct OracleResult {
  bool supported = true;   // false: an interval is open or has non-integer endpoints
  bool complete = true;    // false: max_states hit before exhaustion
  std::string why_unsupported;
  std::set<std::vector<std::uint32_t>> markings;       // token vectors seen within the horizon
  std::set<std::vector<std::string>> traces;
};

OracleResult discrete_time_oracle(const Ptpn& p, const OracleLimits& lim);

}  // namespace tpn
