#include "tpn/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "tpn/bounds.hpp"

namespace tpn {
namespace {

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

// Splits one line on blanks; '#' ends the line.
std::vector<Token> lex_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void fail(ParseError::Kind k, std::size_t ln, std::size_t col, const std::string& msg) {
  throw ParseError(k, ln, col, msg);
}

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

std::uint64_t parse_uint(std::string_view s, std::size_t ln, std::size_t col, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(ParseError::Kind::Syntax, ln, col, std::string("expected ") + what + ", got '" + std::string(s) + "'");
  return v;
}

Rat parse_rat(std::string_view s, std::size_t ln, std::size_t col) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_uint(s, ln, col, "a number");
    return Rat(static_cast<std::int64_t>(v));
  }
  auto num = parse_uint(s.substr(0, slash), ln, col, "a numerator");
  auto den = parse_uint(s.substr(slash + 1), ln, col, "a denominator");
  if (den == 0) fail(ParseError::Kind::Syntax, ln, col, "zero denominator");
  return Rat(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

bool looks_like_interval(const std::string& s) {
  return !s.empty() && (s.front() == '[' || s.front() == ']');
}

TimeInterval parse_interval(const std::string& s, std::size_t ln, std::size_t col) {
  if (s.size() < 5 || (s.back() != '[' && s.back() != ']'))
    fail(ParseError::Kind::Syntax, ln, col, "malformed interval '" + s + "'");
  bool lo_open = s.front() == ']';
  bool hi_open = s.back() == '[';
  std::string_view body(s.data() + 1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
    fail(ParseError::Kind::Syntax, ln, col, "interval needs exactly one comma: '" + s + "'");
  std::string_view lo_s = body.substr(0, comma);
  std::string_view hi_s = body.substr(comma + 1);
  Rat lo = parse_rat(lo_s, ln, col);
  try {
    if (hi_s == "w") {
      if (!hi_open) throw IntervalError(IntervalError::Kind::BadInfinity, "infinite endpoint must be open");
      return TimeInterval::unbounded(lo, lo_open);
    }
    Rat hi = parse_rat(hi_s, ln, col);
    return TimeInterval::make(lo, lo_open, hi, hi_open);
  } catch (const IntervalError& e) {
    fail(e.kind == IntervalError::Kind::Empty ? ParseError::Kind::EmptyInterval : ParseError::Kind::Syntax,
         ln, col, std::string(e.what()) + " in '" + s + "'");
  }
}

void check_name(const std::string& s, std::size_t ln, std::size_t col, const char* what) {
  bool ok = !s.empty() && name_start(s[0]);
  for (std::size_t i = 1; ok && i < s.size(); ++i) ok = name_char(s[i]);
  if (!ok) fail(ParseError::Kind::Syntax, ln, col, std::string("invalid ") + what + " '" + s + "'");
}

struct ArcSpec {
  std::string place;
  std::uint32_t weight;
  std::size_t col;
};

// "p" or "p*3"
ArcSpec parse_arc(const std::string& s, std::size_t ln, std::size_t col) {
  auto star = s.find('*');
  if (star == std::string::npos) {
    check_name(s, ln, col, "place name");
    return {s, 1, col};
  }
  std::string place = s.substr(0, star);
  check_name(place, ln, col, "place name");
  auto w = parse_uint(std::string_view(s).substr(star + 1), ln, col, "an arc weight");
  if (w == 0 || w > 0xffffffffull)
    fail(ParseError::Kind::Syntax, ln, col, "arc weight out of range in '" + s + "'");
  return {place, static_cast<std::uint32_t>(w), col};
}

}  // namespace

bool valid_name(std::string_view s) {
  if (s.empty() || !name_start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), name_char);
}

Ptpn parse_net(const std::string& text) {
  NetBuilder b;
  bool have_net = false;
  std::map<std::string, std::size_t, std::less<>> places;       // name -> decl line
  std::map<std::string, std::size_t, std::less<>> transitions;  // name -> decl line
  std::vector<std::pair<std::vector<std::string>, std::size_t>> sync_decls;

  std::istringstream in(text);
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tok = lex_line(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;

    if (kw == "net") {
      if (have_net) fail(ParseError::Kind::Syntax, ln, tok[0].col, "duplicate net directive");
      if (tok.size() != 2) fail(ParseError::Kind::Syntax, ln, tok[0].col, "expected: net <name>");
      check_name(tok[1].text, ln, tok[1].col, "net name");
      b.name(tok[1].text);
      have_net = true;
      continue;
    }
    if (!have_net)
      fail(ParseError::Kind::Syntax, ln, tok[0].col, "first directive must be 'net <name>'");

    if (kw == "pl") {
      if (tok.size() != 3) fail(ParseError::Kind::Syntax, ln, tok[0].col, "expected: pl <name> (<tokens>)");
      check_name(tok[1].text, ln, tok[1].col, "place name");
      const std::string& par = tok[2].text;
      if (par.size() < 3 || par.front() != '(' || par.back() != ')')
        fail(ParseError::Kind::Syntax, ln, tok[2].col, "expected (<tokens>), got '" + par + "'");
      std::string_view body(par.data() + 1, par.size() - 2);
      if (!body.empty() && body.front() == '-')
        fail(ParseError::Kind::NegativeTokens, ln, tok[2].col, "negative token count '" + par + "'");
      auto n = parse_uint(body, ln, tok[2].col, "a token count");
      if (n > 0xffffffffull) fail(ParseError::Kind::Syntax, ln, tok[2].col, "token count out of range");
      if (places.count(tok[1].text) || transitions.count(tok[1].text))
        fail(ParseError::Kind::DuplicateName, ln, tok[1].col, "name '" + tok[1].text + "' already declared");
      places.emplace(tok[1].text, ln);
      b.place(tok[1].text, static_cast<std::uint32_t>(n));
      continue;
    }

    if (kw == "tr") {
      if (tok.size() < 2) fail(ParseError::Kind::Syntax, ln, tok[0].col, "expected: tr <name> ...");
      const std::string& name = tok[1].text;
      check_name(name, ln, tok[1].col, "transition name");
      if (places.count(name) || transitions.count(name))
        fail(ParseError::Kind::DuplicateName, ln, tok[1].col, "name '" + name + "' already declared");
      std::size_t i = 2;
      std::string label;
      if (i < tok.size() && tok[i].text == ":") {
        if (i + 1 >= tok.size()) fail(ParseError::Kind::Syntax, ln, tok[i].col, "':' needs a label");
        check_name(tok[i + 1].text, ln, tok[i + 1].col, "label");
        label = tok[i + 1].text;
        i += 2;
      }
      TimeInterval iv;
      if (i < tok.size() && looks_like_interval(tok[i].text)) {
        iv = parse_interval(tok[i].text, ln, tok[i].col);
        ++i;
      }
      std::vector<ArcSpec> pre, post;
      bool seen_arrow = false;
      for (; i < tok.size(); ++i) {
        if (tok[i].text == "->") {
          if (seen_arrow) fail(ParseError::Kind::Syntax, ln, tok[i].col, "duplicate '->'");
          seen_arrow = true;
          continue;
        }
        (seen_arrow ? post : pre).push_back(parse_arc(tok[i].text, ln, tok[i].col));
      }
      if (!seen_arrow) fail(ParseError::Kind::Syntax, ln, tok[0].col, "transition needs '->'");
      for (const auto& a : pre)
        if (!places.count(a.place))
          fail(ParseError::Kind::UnknownReference, ln, a.col, "unknown place '" + a.place + "'");
      for (const auto& a : post)
        if (!places.count(a.place))
          fail(ParseError::Kind::UnknownReference, ln, a.col, "unknown place '" + a.place + "'");
      transitions.emplace(name, ln);
      b.transition(name, label, iv);
      for (const auto& a : pre) b.pre(name, a.place, a.weight);
      for (const auto& a : post) b.post(name, a.place, a.weight);
      continue;
    }

    if (kw == "sync") {
      if (tok.size() < 2) fail(ParseError::Kind::Syntax, ln, tok[0].col, "sync needs at least one transition");
      std::vector<std::string> names;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!transitions.count(tok[i].text))
          fail(ParseError::Kind::UnknownReference, ln, tok[i].col, "unknown transition '" + tok[i].text + "'");
        names.push_back(tok[i].text);
      }
      sync_decls.push_back({std::move(names), ln});
      continue;
    }

    fail(ParseError::Kind::Syntax, ln, tok[0].col, "unknown directive '" + kw + "'");
  }

  if (!have_net) fail(ParseError::Kind::Syntax, 1, 1, "empty input: expected 'net <name>'");

  Ptpn p;
  p.net = b.build();

  if (sync_decls.empty()) {
    p.relation = lifted_relation(p.net);
  } else {
    for (auto& [names, set_ln] : sync_decls) {
      FiringSet resolved;
      for (const auto& nm : names) resolved.push_back(*p.net.find_transition(nm));
      std::sort(resolved.begin(), resolved.end());
      resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());
      try {
        validate_firing_set(p.net, resolved);
      } catch (const ModelError& e) {
        fail(ParseError::Kind::InvalidSync, set_ln, 1, e.what());
      }
      p.relation.push_back(std::move(resolved));
    }
    normalize_relation(p.relation);
  }
  return p;
}

std::string serialize_net(const Ptpn& p) {
  const Net& n = p.net;
  std::ostringstream out;
  out << "net " << n.name << "\n";
  for (std::size_t i = 0; i < n.places.size(); ++i)
    out << "pl " << n.places[i] << " (" << n.initial.tokens[i] << ")\n";
  for (const auto& t : n.transitions) {
    out << "tr " << t.name;
    if (!t.silent()) out << " : " << t.label;
    if (!t.interval.is_default()) out << " " << to_string(t.interval);
    for (const auto& a : t.pre) {
      out << " " << n.places[a.place];
      if (a.weight != 1) out << "*" << a.weight;
    }
    out << " ->";
    for (const auto& a : t.post) {
      out << " " << n.places[a.place];
      if (a.weight != 1) out << "*" << a.weight;
    }
    out << "\n";
  }
  if (p.relation != lifted_relation(n)) {
    for (const auto& set : p.relation) {
      out << "sync";
      for (auto t : set) out << " " << n.transitions[t].name;
      out << "\n";
    }
  }
  return out.str();
}

Ptpn load_net_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(ParseError::Kind::MissingComponent, 0, 0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_net(buf.str());
  } catch (ParseError& e) {
    throw ParseError(e.kind, e.line, e.col, e.detail, path.string());
  }
}

Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  Manifest m;
  m.base_dir = base_dir;
  std::istringstream in(text);
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tok = lex_line(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    if (kw == "component") {
      if (tok.size() != 2)
        fail(ParseError::Kind::Syntax, ln, tok[0].col, "expected: component <path>");
      m.entries.push_back({tok[1].text, SyncPolicy{}});
      continue;
    }
    if (kw == "sync-labels") {
      if (m.entries.empty())
        fail(ParseError::Kind::Syntax, ln, tok[0].col, "sync-labels before any component");
      SyncPolicy pol;
      pol.intersection = false;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        check_name(tok[i].text, ln, tok[i].col, "label");
        pol.labels.push_back(tok[i].text);
      }
      std::sort(pol.labels.begin(), pol.labels.end());
      pol.labels.erase(std::unique(pol.labels.begin(), pol.labels.end()), pol.labels.end());
      m.entries.back().policy = pol;
      continue;
    }
    fail(ParseError::Kind::Syntax, ln, tok[0].col, "unknown directive '" + kw + "'");
  }
  if (m.entries.empty()) fail(ParseError::Kind::Syntax, 1, 1, "manifest lists no components");
  return m;
}

Manifest load_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(ParseError::Kind::MissingComponent, 0, 0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto dir = path.parent_path();
  if (dir.empty()) dir = ".";
  try {
    return parse_manifest(buf.str(), dir);
  } catch (ParseError& e) {
    throw ParseError(e.kind, e.line, e.col, e.detail, path.string());
  }
}

std::string serialize_manifest(const Manifest& m) {
  std::ostringstream out;
  for (const auto& e : m.entries) {
    out << "component " << e.path << "\n";
    if (!e.policy.intersection) {
      out << "sync-labels";
      for (const auto& l : e.policy.labels) out << " " << l;
      out << "\n";
    }
  }
  return out.str();
}

std::vector<Ptpn> load_components(const Manifest& m) {
  std::vector<Ptpn> out;
  out.reserve(m.entries.size());
  for (const auto& e : m.entries) out.push_back(load_net_file(m.base_dir / e.path));
  return out;
}

}  // namespace tpn
