#include <doctest.h>

#include "tpn/analysis.hpp"
#include "tpn/parser.hpp"
#include "tpn/product.hpp"
#include "support.hpp"

using namespace tpn;
using testsupport::fixture;
using testsupport::read_file;

namespace {

Ptpn reference_product() {
  Ptpn n1 = parse_net(read_file(fixture("n1.net")));
  Ptpn n2 = parse_net(read_file(fixture("n2.net")));
  return binary_product(n1, n2, {"a", "b"}).ptpn;
}

const AcceptanceSpec kPairSpec{"b", "TIMEOUT", {{"q2", 1}, {"p2", 1}}};

}  // namespace

TEST_CASE("dead classes are the ones without successors") {
  Ptpn p = reference_product();
  auto res = build_scg(p);
  REQUIRE(res.complete);
  auto dead = dead_classes(res.graph, res.expanded);
  CHECK(dead == std::vector<std::uint32_t>{2, 3});
}

TEST_CASE("label reachability scans the edge relation") {
  Ptpn p = reference_product();
  auto res = build_scg(p);
  CHECK(label_reachable(p, res.graph, "a"));
  CHECK(label_reachable(p, res.graph, "b"));
  CHECK_FALSE(label_reachable(p, res.graph, "zzz"));
}

TEST_CASE("the reference product times out into a timelock verdict") {
  Ptpn p = reference_product();
  auto built = build_scg(p);
  auto rep = verdict_of(p, built, kPairSpec);
  CHECK(rep.verdict == Verdict::TimeLock);
  CHECK(rep.complete);
  REQUIRE(rep.witness);
  CHECK(*rep.witness == 3);
  CHECK(rep.path == std::vector<std::uint32_t>{0, 1, 3});
}

TEST_CASE("without the silent branch the good label is inevitable") {
  Ptpn n1 = parse_net(
      "net n1\npl q0 (1)\npl q1 (0)\npl q2 (0)\n"
      "tr t0 : a q0 -> q1\ntr t1 : b q1 -> q2\n");
  Ptpn n2 = parse_net(read_file(fixture("n2.net")));
  Ptpn p = binary_product(n1, n2, {"a", "b"}).ptpn;
  auto built = build_scg(p);
  REQUIRE(built.complete);
  CHECK(label_inevitable(p, built.graph, "b"));
  auto rep = verdict_of(p, built, kPairSpec);
  CHECK(rep.verdict == Verdict::Success);
}

TEST_CASE("a reachable timeout edge wins over a timelock") {
  Ptpn p = parse_net(
      "net a\npl p (1)\npl q (1)\npl sink (0)\n"
      "tr stop [0,1] q ->\n"
      "tr late : TIMEOUT [5,5] p -> sink\n");
  // stop leads to a dead, non-accepting class; the TIMEOUT firing exists too.
  auto built = build_scg(p);
  REQUIRE(built.complete);
  AcceptanceSpec spec;
  spec.accepting_at_least = {{"sink", 2}};  // nothing accepts
  auto rep = verdict_of(p, built, spec);
  CHECK(rep.verdict == Verdict::TimeOut);
  REQUIRE(rep.witness);
  CHECK(!rep.path.empty());
}

TEST_CASE("a silent loop forecloses nothing and yields inconclusive") {
  Ptpn p = parse_net(read_file(fixture("cycle.net")));
  auto built = build_scg(p);
  REQUIRE(built.complete);
  CHECK(built.graph.classes.size() == 1);  // refiring restores the same class
  AcceptanceSpec spec;
  spec.accepting_at_least = {{"p", 5}};
  auto rep = verdict_of(p, built, spec);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.complete);
}

TEST_CASE("truncated graphs only justify reachability verdicts") {
  // Unbounded generator: truncation leaves no sound claim to make.
  Ptpn gen = parse_net("net g\npl b (0)\ntr mk [1,1] -> b\n");
  auto built = build_scg(gen, {.max_classes = 5});
  REQUIRE_FALSE(built.complete);
  auto rep = verdict_of(gen, built, AcceptanceSpec{});
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK_FALSE(rep.complete);

  // A dead class inside the expanded prefix is sound even when the build
  // stopped early. die empties everything at once; step drains the counter
  // one token at a time, so the full graph is a short chain plus that dead
  // branch, and a 4-class cap stops the build after the dead branch was
  // already expanded.
  Ptpn p = parse_net(
      "net a\npl p (1)\npl c (5)\npl g (0)\n"
      "tr die [0,5] p c*5 ->\n"
      "tr step [1,1] c -> g\n");
  auto full = build_scg(p);
  REQUIRE(full.complete);
  auto cut = build_scg(p, {.max_classes = 4});
  REQUIRE_FALSE(cut.complete);
  AcceptanceSpec spec;
  spec.accepting_at_least = {{"g", 7}};
  auto rep2 = verdict_of(p, cut, spec);
  CHECK(rep2.verdict == Verdict::TimeLock);
  CHECK_FALSE(rep2.complete);

  // The same dead class is found on the full graph, with the same soundness.
  CHECK(verdict_of(p, full, spec).verdict == Verdict::TimeLock);
}

TEST_CASE("success requires a complete graph") {
  Ptpn p = parse_net("net a\npl p (1)\npl q (0)\ntr t : SUCCESS [0,1] p -> q\n");
  auto full = build_scg(p);
  AcceptanceSpec spec;
  spec.accepting_at_least = {{"q", 1}};
  CHECK(verdict_of(p, full, spec).verdict == Verdict::Success);

  auto cut = build_scg(p, {.max_classes = 1});
  REQUIRE_FALSE(cut.complete);
  CHECK(verdict_of(p, cut, spec).verdict == Verdict::Inconclusive);
}

TEST_CASE("unknown accepting places are rejected") {
  Ptpn p = parse_net("net a\npl p (1)\ntr t [0,1] p ->\n");
  auto built = build_scg(p);
  AcceptanceSpec spec;
  spec.accepting_at_least = {{"nope", 1}};
  CHECK_THROWS_AS(verdict_of(p, built, spec), ModelError);
}

TEST_CASE("oracle enumerates the exact tick-level trace set") {
  Ptpn p = parse_net("net a\npl p (1)\npl q (0)\ntr t : a [1,2] p -> q\n");
  OracleLimits lim;
  lim.horizon_ticks = 3;
  lim.max_trace_length = 3;
  lim.collect_traces = true;
  auto res = discrete_time_oracle(p, lim);
  REQUIRE(res.supported);
  REQUIRE(res.complete);

  // Time may not pass the upper bound 2 while t is enabled, so the third
  // symbol is either the firing or a tick after it.
  std::set<std::vector<std::string>> want = {
      {},
      {"@tick"},
      {"@tick", "a"},
      {"@tick", "@tick"},
      {"@tick", "a", "@tick"},
      {"@tick", "@tick", "a"},
  };
  CHECK(res.traces == want);
  CHECK(res.markings == std::set<std::vector<std::uint32_t>>{{1, 0}, {0, 1}});
}

TEST_CASE("oracle refuses open or non-integer intervals") {
  Ptpn p = parse_net(read_file(fixture("rational.net")));
  auto res = discrete_time_oracle(p, {.horizon_ticks = 2});
  CHECK_FALSE(res.supported);
  CHECK_FALSE(res.why_unsupported.empty());
  CHECK(res.markings.empty());
}

TEST_CASE("oracle markings match the class graph on a weighted net") {
  Ptpn p = parse_net(read_file(fixture("weighted.net")));
  auto built = build_scg(p);
  REQUIRE(built.complete);
  auto res = discrete_time_oracle(p, {.horizon_ticks = 6});
  REQUIRE(res.supported);
  auto want = std::set<std::vector<std::uint32_t>>{{4, 0}, {2, 3}, {0, 6}};
  CHECK(res.markings == want);
  CHECK(testsupport::graph_markings(built.graph) == want);
}

TEST_CASE("oracle respects upper bounds when ticking") {
  // The [0,0] transition pins time: no tick may happen before it fires.
  Ptpn p = parse_net("net a\npl p (1)\npl q (1)\ntr now [0,0] p ->\ntr t : x [1,1] q ->\n");
  OracleLimits lim;
  lim.horizon_ticks = 4;
  lim.max_trace_length = 4;
  lim.collect_traces = true;
  auto res = discrete_time_oracle(p, lim);
  REQUIRE(res.supported);
  // Every trace with a tick fired `now` silently first, and x comes exactly
  // one tick later; afterwards time is unconstrained.
  std::set<std::vector<std::string>> want = {
      {},
      {"@tick"},
      {"@tick", "x"},
      {"@tick", "x", "@tick"},
      {"@tick", "x", "@tick", "@tick"},
  };
  CHECK(res.traces == want);
}

TEST_CASE("oracle silent firings leave no trace symbols") {
  Ptpn p = parse_net("net a\npl p (1)\npl q (0)\ntr t [0,0] p -> q\n");
  OracleLimits lim;
  lim.horizon_ticks = 2;
  lim.max_trace_length = 2;
  lim.collect_traces = true;
  auto res = discrete_time_oracle(p, lim);
  REQUIRE(res.supported);
  CHECK(res.traces == std::set<std::vector<std::string>>{{}, {"@tick"}, {"@tick", "@tick"}});
  CHECK(res.markings == std::set<std::vector<std::uint32_t>>{{1, 0}, {0, 1}});
}

TEST_CASE("verdict names render") {
  CHECK(to_string(Verdict::Success) == "Success");
  CHECK(to_string(Verdict::TimeOut) == "TimeOut");
  CHECK(to_string(Verdict::TimeLock) == "TimeLock");
  CHECK(to_string(Verdict::Inconclusive) == "Inconclusive");
}
