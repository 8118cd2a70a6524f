#include "tpn/analysis.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace tpn {
namespace {

// Path from the root to `target` following BFS parents over the edge list.
std::vector<std::uint32_t> path_to(const ScGraph& g, std::uint32_t target) {
  std::vector<std::int64_t> parent(g.classes.size(), -1);
  std::vector<bool> seen(g.classes.size(), false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::uint32_t c = queue.front();
    queue.pop_front();
    if (c == target) break;
    for (std::uint32_t e = g.first_edge[c]; e < g.first_edge[c + 1]; ++e) {
      std::uint32_t d = g.edges[e].dst;
      if (!seen[d]) {
        seen[d] = true;
        parent[d] = c;
        queue.push_back(d);
      }
    }
  }
  std::vector<std::uint32_t> path;
  if (!seen[target]) return path;
  for (std::int64_t c = target; c != -1; c = parent[c]) path.push_back(static_cast<std::uint32_t>(c));
  std::reverse(path.begin(), path.end());
  return path;
}

bool marking_accepts(const Marking& m,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& at_least) {
  for (auto [place, k] : at_least)
    if (m.tokens[place] < k) return false;
  return true;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> resolve_accepting(
    const Net& net, const AcceptanceSpec& spec) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& [name, k] : spec.accepting_at_least) {
    auto p = net.find_place(name);
    if (!p)
      throw ModelError(ModelError::Kind::UnknownReference,
                       "accepting place '" + name + "' is not in the net");
    out.emplace_back(*p, k);
  }
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Success: return "Success";
    case Verdict::TimeOut: return "TimeOut";
    case Verdict::TimeLock: return "TimeLock";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<std::uint32_t> dead_classes(const ScGraph& g, std::size_t expanded) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < expanded; ++c)
    if (g.out_degree(c) == 0) out.push_back(c);
  return out;
}

bool label_reachable(const Ptpn& p, const ScGraph& g, const std::string& label) {
  for (const auto& e : g.edges)
    if (set_label(p.net, p.relation[e.rel]) == label) return true;
  return false;
}

bool label_inevitable(const Ptpn& p, const ScGraph& g, const std::string& label) {
  // Iterative DFS over edges not labelled `label`; gray-on-stack means cycle.
  enum : unsigned char { White, Gray, Black };
  std::vector<unsigned char> color(g.classes.size(), White);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (class, next edge offset)
  stack.push_back({0, 0});
  color[0] = Gray;
  while (!stack.empty()) {
    auto [c, off] = stack.back();
    if (g.out_degree(c) == 0) return false;  // a run can end here without the label
    bool descended = false;
    while (off < g.out_degree(c)) {
      const ScEdge& e = g.edges[g.first_edge[c] + off];
      ++off;
      if (set_label(p.net, p.relation[e.rel]) == label) continue;
      if (color[e.dst] == Gray) return false;  // label-free cycle
      if (color[e.dst] == White) {
        stack.back().second = off;
        color[e.dst] = Gray;
        stack.push_back({e.dst, 0});
        descended = true;
        break;
      }
    }
    if (!descended) {
      color[c] = Black;
      stack.pop_back();
    }
  }
  return true;
}

VerdictReport verdict_of(const Ptpn& p, const BuildResult& built, const AcceptanceSpec& spec) {
  const ScGraph& g = built.graph;
  auto accepting = resolve_accepting(p.net, spec);

  VerdictReport rep;
  rep.complete = built.complete;

  for (const auto& e : g.edges) {
    if (set_label(p.net, p.relation[e.rel]) == spec.timeout_label) {
      rep.verdict = Verdict::TimeOut;
      rep.witness = e.src;
      rep.path = path_to(g, e.src);
      rep.detail = "a run reaches '" + spec.timeout_label + "'";
      return rep;
    }
  }

  for (std::uint32_t c : dead_classes(g, built.expanded)) {
    if (!marking_accepts(g.classes[c].marking, accepting)) {
      rep.verdict = Verdict::TimeLock;
      rep.witness = c;
      rep.path = path_to(g, c);
      rep.detail = "class " + std::to_string(c) + " is dead and not accepting";
      return rep;
    }
  }

  if (!built.complete) {
    rep.verdict = Verdict::Inconclusive;
    rep.detail = "exploration stopped before exhausting the graph";
    return rep;
  }

  if (label_inevitable(p, g, spec.success_label)) {
    rep.verdict = Verdict::Success;
    rep.detail = "every run fires '" + spec.success_label + "'";
    return rep;
  }

  rep.verdict = Verdict::Inconclusive;
  rep.detail = "no timeout or timelock, but '" + spec.success_label + "' is not inevitable";
  return rep;
}

namespace {

struct TickState {
  std::vector<std::uint32_t> tokens;
  std::vector<std::uint32_t> clocks;  // aligned with enabled_set(tokens)
  friend bool operator==(const TickState& a, const TickState& b) = default;
};

struct TickStateHash {
  std::size_t operator()(const TickState& s) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : s.tokens) h = hash_combine(h, v);
    h = hash_combine(h, 0x517cc1b727220a95ULL);
    for (auto v : s.clocks) h = hash_combine(h, v);
    return h;
  }
};

struct TickModel {
  const Ptpn& p;
  std::vector<std::int64_t> lo, hi;  // hi = -1 for unbounded
  explicit TickModel(const Ptpn& ptpn) : p(ptpn) {}

  bool extract(std::string& why) {
    for (const auto& t : p.net.transitions) {
      const auto& iv = t.interval;
      if (iv.lower_open || (!iv.upper_inf && iv.upper_open)) {
        why = "transition '" + t.name + "' has an open interval endpoint";
        return false;
      }
      if (iv.lower.den != 1 || (!iv.upper_inf && iv.upper.den != 1)) {
        why = "transition '" + t.name + "' has non-integer interval endpoints";
        return false;
      }
      lo.push_back(iv.lower.num);
      hi.push_back(iv.upper_inf ? -1 : iv.upper.num);
    }
    return true;
  }

  // Clocks never need to grow past the last point they can influence choice.
  std::uint32_t cap(std::uint32_t t) const {
    return static_cast<std::uint32_t>(hi[t] >= 0 ? hi[t] : lo[t]);
  }

  TickState initial() const {
    TickState s;
    s.tokens = p.net.initial.tokens;
    s.clocks.assign(enabled_set(p.net, p.net.initial).size(), 0);
    return s;
  }

  bool can_tick(const TickState& s, const std::vector<std::uint32_t>& enabled) const {
    for (std::size_t i = 0; i < enabled.size(); ++i) {
      std::int64_t h = hi[enabled[i]];
      if (h >= 0 && s.clocks[i] + 1 > h) return false;
    }
    return true;
  }

  TickState tick(const TickState& s, const std::vector<std::uint32_t>& enabled) const {
    TickState n = s;
    for (std::size_t i = 0; i < enabled.size(); ++i)
      n.clocks[i] = std::min(n.clocks[i] + 1, cap(enabled[i]));
    return n;
  }

  bool can_fire(const TickState& s, const std::vector<std::uint32_t>& enabled,
                const FiringSet& r) const {
    for (auto t : r) {
      auto it = std::lower_bound(enabled.begin(), enabled.end(), t);
      if (it == enabled.end() || *it != t) return false;
      if (s.clocks[it - enabled.begin()] < lo[t]) return false;
    }
    return true;
  }

  TickState fire(const TickState& s, const std::vector<std::uint32_t>& enabled,
                 const FiringSet& r) const {
    Marking m;
    m.tokens = s.tokens;
    FireResult fr = fire_firing_set(p.net, m, r);
    auto next_enabled = enabled_set(p.net, fr.next);
    TickState n;
    n.tokens = std::move(fr.next.tokens);
    n.clocks.assign(next_enabled.size(), 0);
    for (std::size_t i = 0; i < next_enabled.size(); ++i) {
      std::uint32_t t = next_enabled[i];
      if (std::binary_search(fr.persistent.begin(), fr.persistent.end(), t)) {
        auto it = std::lower_bound(enabled.begin(), enabled.end(), t);
        n.clocks[i] = s.clocks[it - enabled.begin()];
      }
    }
    return n;
  }
};

struct TraceItem {
  TickState state;
  std::vector<std::string> trace;
  friend bool operator==(const TraceItem& a, const TraceItem& b) = default;
};

struct TraceItemHash {
  std::size_t operator()(const TraceItem& it) const {
    std::size_t h = TickStateHash{}(it.state);
    for (const auto& s : it.trace) h = hash_combine(h, std::hash<std::string>{}(s));
    return h;
  }
};

}  // namespace

OracleResult discrete_time_oracle(const Ptpn& p, const OracleLimits& lim) {
  OracleResult res;
  TickModel model(p);
  if (!model.extract(res.why_unsupported)) {
    res.supported = false;
    return res;
  }

  // Marking reachability: 0-cost firings, 1-cost ticks, layered by tick count.
  {
    std::unordered_set<TickState, TickStateHash> seen;
    std::vector<TickState> layer{model.initial()};
    seen.insert(layer[0]);
    res.markings.insert(layer[0].tokens);
    for (std::uint64_t depth = 0; !layer.empty(); ++depth) {
      // Close the layer under instantaneous firings.
      for (std::size_t i = 0; i < layer.size(); ++i) {
        if (seen.size() > lim.max_states) {
          res.complete = false;
          return res;
        }
        TickState cur = layer[i];
        Marking m;
        m.tokens = cur.tokens;
        auto enabled = enabled_set(p.net, m);
        for (const auto& r : p.relation) {
          if (!model.can_fire(cur, enabled, r)) continue;
          TickState nxt = model.fire(cur, enabled, r);
          if (seen.insert(nxt).second) {
            res.markings.insert(nxt.tokens);
            layer.push_back(std::move(nxt));
          }
        }
      }
      if (depth == lim.horizon_ticks) break;
      std::vector<TickState> next;
      for (const auto& s : layer) {
        Marking m;
        m.tokens = s.tokens;
        auto enabled = enabled_set(p.net, m);
        if (!model.can_tick(s, enabled)) continue;
        TickState nxt = model.tick(s, enabled);
        if (seen.insert(nxt).second) {
          res.markings.insert(nxt.tokens);
          next.push_back(std::move(nxt));
        }
      }
      layer = std::move(next);
    }
  }

  if (!lim.collect_traces) return res;

  // Exact visible-trace set up to the length cap: breadth first over
  // (state, trace) pairs, deduplicated as pairs. Silent firings keep the
  // trace, so they stay inside a pair's closure.
  using Item = TraceItem;
  std::unordered_set<Item, TraceItemHash> visited;
  std::deque<Item> queue;
  queue.push_back({model.initial(), {}});
  visited.insert(queue.front());
  res.traces.emplace();
  while (!queue.empty()) {
    if (visited.size() > lim.max_states) {
      res.complete = false;
      return res;
    }
    Item cur = std::move(queue.front());
    queue.pop_front();
    Marking m;
    m.tokens = cur.state.tokens;
    auto enabled = enabled_set(p.net, m);

    auto push = [&](TickState&& st, std::vector<std::string>&& tr) {
      Item it{std::move(st), std::move(tr)};
      if (visited.insert(it).second) {
        res.traces.insert(it.trace);
        queue.push_back(std::move(it));
      }
    };

    for (const auto& r : p.relation) {
      if (!model.can_fire(cur.state, enabled, r)) continue;
      const std::string& l = set_label(p.net, r);
      auto trace = cur.trace;
      if (!l.empty()) {
        if (trace.size() >= lim.max_trace_length) continue;
        trace.push_back(l);
      }
      push(model.fire(cur.state, enabled, r), std::move(trace));
    }
    if (cur.trace.size() < lim.max_trace_length && model.can_tick(cur.state, enabled)) {
      auto trace = cur.trace;
      trace.push_back("@tick");
      push(model.tick(cur.state, enabled), std::move(trace));
    }
  }
  return res;
}

}  // namespace tpn
