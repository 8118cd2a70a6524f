#include <doctest.h>

#include <random>
#include <set>

#include "tpn/parser.hpp"
#include "support.hpp"

using namespace tpn;
using testsupport::fixture;
using testsupport::read_file;

TEST_CASE("good fixtures round-trip byte for byte") {
  for (const char* name : {"n1.net", "n2.net", "syncsets.net", "cycle.net",
                           "weighted.net", "rational.net"}) {
    INFO(name);
    std::string text = read_file(fixture(name));
    Ptpn p = parse_net(text);
    CHECK(serialize_net(p) == text);
  }
}

TEST_CASE("parsed structure of a small labelled net") {
  Ptpn p = parse_net(read_file(fixture("n1.net")));
  const Net& n = p.net;
  CHECK(n.name == "n1");
  REQUIRE(n.places.size() == 4);
  REQUIRE(n.transitions.size() == 4);
  CHECK(n.initial.tokens == std::vector<std::uint32_t>{1, 0, 0, 0});

  auto t = n.find_transition("t");
  REQUIRE(t);
  CHECK(n.transitions[*t].silent());
  CHECK(n.transitions[*t].interval.is_default());

  auto t3 = n.find_transition("t3");
  REQUIRE(t3);
  CHECK(n.transitions[*t3].label == "b");
  CHECK(n.transitions[*t3].interval.lower == Rat(3));
  CHECK(n.transitions[*t3].interval.upper_inf);

  CHECK(n.alphabet() == std::vector<std::string>{"a", "b"});
  CHECK(p.relation == lifted_relation(n));  // no sync lines: singleton lift
}

TEST_CASE("sync lines replace the lifted relation") {
  Ptpn p = parse_net(read_file(fixture("syncsets.net")));
  auto t = *p.net.find_transition("t");
  auto u = *p.net.find_transition("u");
  auto v = *p.net.find_transition("v");
  std::vector<FiringSet> want = {{t, u}, {v}};
  normalize_relation(want);
  CHECK(p.relation == want);
}

TEST_CASE("weights parse and accumulate onto arcs") {
  Ptpn p = parse_net(read_file(fixture("weighted.net")));
  const Transition& t = p.net.transitions[0];
  REQUIRE(t.pre.size() == 1);
  REQUIRE(t.post.size() == 1);
  CHECK(t.pre[0].weight == 2);
  CHECK(t.post[0].weight == 3);

  // Repeating a place accumulates weight instead of erroring.
  Ptpn q = parse_net("net a\npl p (3)\npl q (0)\ntr t p p*2 -> q\n");
  CHECK(q.net.transitions[0].pre[0].weight == 3);
  CHECK(serialize_net(q) == "net a\npl p (3)\npl q (0)\ntr t p*3 -> q\n");
}

TEST_CASE("every interval shape parses and renders back") {
  struct Row {
    const char* text;
    bool lo_open, hi_open, inf;
  };
  const Row rows[] = {
      {"[1,2]", false, false, false},
      {"]1,2]", true, false, false},
      {"[1,2[", false, true, false},
      {"]1,2[", true, true, false},
      {"[3,w[", false, true, true},
      {"]1/2,3[", true, true, false},
  };
  for (const auto& r : rows) {
    INFO(r.text);
    Ptpn p = parse_net(std::string("net a\npl p (1)\ntr t ") + r.text + " p ->\n");
    const TimeInterval& iv = p.net.transitions[0].interval;
    CHECK(iv.lower_open == r.lo_open);
    CHECK(iv.upper_inf == r.inf);
    if (!r.inf) CHECK(iv.upper_open == r.hi_open);
    CHECK(to_string(iv) == r.text);
  }
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  std::string text =
      "# header comment\r\n"
      "net a\r\n"
      "\r\n"
      "pl p (1)  # trailing comment\r\n"
      "tr t : go [1,2] p ->\r\n";
  Ptpn p = parse_net(text);
  CHECK(p.net.name == "a");
  CHECK(p.net.transitions[0].label == "go");
  CHECK(serialize_net(p) == "net a\npl p (1)\ntr t : go [1,2] p ->\n");
}

TEST_CASE("malformed inputs are rejected with a kind and a position") {
  struct Row {
    const char* file;
    ParseError::Kind kind;
    std::size_t line;
  };
  const Row rows[] = {
      {"bad01.net", ParseError::Kind::Syntax, 1},
      {"bad02.net", ParseError::Kind::DuplicateName, 3},
      {"bad03.net", ParseError::Kind::UnknownReference, 3},
      {"bad04.net", ParseError::Kind::EmptyInterval, 3},
      {"bad05.net", ParseError::Kind::NegativeTokens, 2},
      {"bad06.net", ParseError::Kind::Syntax, 3},
      {"bad07.net", ParseError::Kind::Syntax, 3},
      {"bad08.net", ParseError::Kind::Syntax, 3},
      {"bad09.net", ParseError::Kind::UnknownReference, 4},
      {"bad10.net", ParseError::Kind::InvalidSync, 6},
      {"bad11.net", ParseError::Kind::InvalidSync, 5},
      {"bad12.net", ParseError::Kind::Syntax, 2},
      {"bad13.net", ParseError::Kind::Syntax, 2},
      {"bad14.net", ParseError::Kind::Syntax, 2},
      {"bad15.net", ParseError::Kind::Syntax, 3},
  };
  for (const auto& r : rows) {
    INFO(r.file);
    std::string text = read_file(fixture(std::string("bad/") + r.file));
    bool threw = false;
    try {
      parse_net(text);
    } catch (const ParseError& e) {
      threw = true;
      CHECK(e.kind == r.kind);
      CHECK(e.line == r.line);
      CHECK(e.col >= 1);
    }
    CHECK(threw);
  }
}

TEST_CASE("declaration order is enforced") {
  CHECK_THROWS_AS(parse_net("net a\ntr t p ->\npl p (1)\n"), ParseError);
  CHECK_THROWS_AS(parse_net("net a\npl p (1)\nsync t\ntr t p ->\n"), ParseError);
  CHECK_THROWS_AS(parse_net(""), ParseError);
}

TEST_CASE("name validity") {
  CHECK(valid_name("a"));
  CHECK(valid_name("_x9"));
  CHECK(valid_name("a.b-c_1"));
  CHECK_FALSE(valid_name(""));
  CHECK_FALSE(valid_name("1a"));
  CHECK_FALSE(valid_name("-a"));
  CHECK_FALSE(valid_name("a b"));
}

TEST_CASE("serialize then parse is the identity on random nets") {
  std::mt19937 rng(424242);
  int with_sync = 0;
  for (int round = 0; round < 500; ++round) {
    Ptpn p = testsupport::random_ptpn(rng);

    // Sometimes swap the lifted relation for a crafted one: a synchronised
    // pair with equal labels and disjoint input places, plus the remaining
    // singletons.
    const auto& ts = p.net.transitions;
    for (std::size_t i = 0; i < ts.size() && round % 3 == 0; ++i) {
      bool done = false;
      for (std::size_t j = i + 1; j < ts.size() && !done; ++j) {
        if (ts[i].label != ts[j].label) continue;
        std::set<std::uint32_t> pre_i, pre_j;
        for (const auto& a : ts[i].pre) pre_i.insert(a.place);
        for (const auto& a : ts[j].pre) pre_j.insert(a.place);
        bool disjoint = true;
        for (auto pl : pre_i) disjoint = disjoint && !pre_j.count(pl);
        if (!disjoint) continue;
        std::vector<FiringSet> rel = {{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}};
        for (std::uint32_t k = 0; k < ts.size(); ++k)
          if (k != i && k != j) rel.push_back({k});
        normalize_relation(rel);
        validate_ptpn({p.net, rel});
        p.relation = rel;
        ++with_sync;
        done = true;
      }
      if (done) break;
    }

    std::string text = serialize_net(p);
    Ptpn q = parse_net(text);
    CHECK(serialize_net(q) == text);
    CHECK(q.net.name == p.net.name);
    CHECK(q.net.places == p.net.places);
    CHECK(q.net.initial == p.net.initial);
    CHECK(q.relation == p.relation);
    REQUIRE(q.net.transitions.size() == p.net.transitions.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(q.net.transitions[i].name == ts[i].name);
      CHECK(q.net.transitions[i].label == ts[i].label);
      CHECK(q.net.transitions[i].interval == ts[i].interval);
      CHECK(q.net.transitions[i].pre == ts[i].pre);
      CHECK(q.net.transitions[i].post == ts[i].post);
    }
  }
  CHECK(with_sync > 30);
}

TEST_CASE("manifests parse, serialize and load") {
  Manifest m = load_manifest_file(fixture("pair.manifest"));
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].path == "n1.net");
  CHECK(m.entries[1].path == "n2.net");
  CHECK(m.entries[1].policy.intersection);

  Manifest ma = load_manifest_file(fixture("pair-a.manifest"));
  REQUIRE(ma.entries.size() == 2);
  CHECK_FALSE(ma.entries[1].policy.intersection);
  CHECK(ma.entries[1].policy.labels == std::vector<std::string>{"a"});

  CHECK(serialize_manifest(ma) == read_file(fixture("pair-a.manifest")));

  auto nets = load_components(ma);
  REQUIRE(nets.size() == 2);
  CHECK(nets[0].net.name == "n1");
  CHECK(nets[1].net.name == "n2");
}

TEST_CASE("manifest error cases") {
  CHECK_THROWS_AS(parse_manifest(""), ParseError);
  CHECK_THROWS_AS(parse_manifest("sync-labels a\ncomponent x.net\n"), ParseError);
  CHECK_THROWS_AS(parse_manifest("component\n"), ParseError);
  try {
    load_net_file(fixture("does-not-exist.net"));
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::MissingComponent);
  }
  // An empty label list is allowed and means "synchronise nothing".
  Manifest m = parse_manifest("component a.net\ncomponent b.net\nsync-labels\n");
  CHECK_FALSE(m.entries[1].policy.intersection);
  CHECK(m.entries[1].policy.labels.empty());
}
