#include "tpn/scg.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace tpn {
namespace {

// Domain variable of transition t in class c, or 0 if t is not enabled there.
std::uint32_t var_of(const StateClass& c, std::uint32_t t) {
  auto it = std::lower_bound(c.enabled.begin(), c.enabled.end(), t);
  if (it == c.enabled.end() || *it != t) return 0;
  return static_cast<std::uint32_t>(it - c.enabled.begin()) + 1;
}

bool members_enabled(const StateClass& c, const FiringSet& r) {
  return std::includes(c.enabled.begin(), c.enabled.end(), r.begin(), r.end());
}

// Domain of c constrained by "all members of r fire together, before any other
// enabled transition". Returns nullopt when that is inconsistent, i.e. r is
// not firable from c.
std::optional<Dbm> try_augment(const StateClass& c, const FiringSet& r) {
  Dbm d = c.domain;
  std::uint32_t f = var_of(c, r[0]);
  for (std::size_t i = 1; i < r.size(); ++i) {
    std::uint32_t v = var_of(c, r[i]);
    d.tighten(f, v, Bound::zero());
    d.tighten(v, f, Bound::zero());
  }
  for (std::uint32_t v = 1; v < d.dim(); ++v)
    if (v != f) d.tighten(f, v, Bound::zero());
  if (!d.canonicalize()) return std::nullopt;
  return d;
}

StateClass successor_from(const Ptpn& p, const StateClass& c, const FiringSet& r, const Dbm& aug) {
  FireResult fr = fire_firing_set(p.net, c.marking, r);
  StateClass out;
  out.marking = std::move(fr.next);
  out.enabled = enabled_set(p.net, out.marking);

  const std::uint32_t f = var_of(c, r[0]);
  const std::uint32_t dim = static_cast<std::uint32_t>(out.enabled.size()) + 1;

  // Shifted clocks of persistent transitions are exact projections of the
  // augmented domain with the firing point as new reference; fresh clocks get
  // their static interval.
  std::vector<std::uint32_t> src(dim, 0);
  std::vector<bool> fresh(dim, false);
  src[0] = f;
  for (std::uint32_t i = 0; i < out.enabled.size(); ++i) {
    std::uint32_t t = out.enabled[i];
    bool persistent = std::binary_search(fr.persistent.begin(), fr.persistent.end(), t);
    if (persistent) {
      src[i + 1] = var_of(c, t);
    } else {
      fresh[i + 1] = true;
    }
  }

  Dbm nd(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (fresh[i]) continue;
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (fresh[j] || i == j) continue;
      nd.at(i, j) = aug.at(src[i], src[j]);
    }
  }
  for (std::uint32_t i = 1; i < dim; ++i) {
    if (!fresh[i]) continue;
    const TimeInterval& iv = p.net.transitions[out.enabled[i - 1]].interval;
    nd.at(i, 0) = iv.upper_bound();
    nd.at(0, i) = iv.lower_bound();
  }
  nd.canonicalize();
  out.domain = std::move(nd);
  return out;
}

struct Expansion {
  std::uint32_t rel;
  StateClass cls;
};

std::vector<Expansion> expand(const Ptpn& p, const StateClass& c) {
  std::vector<Expansion> out;
  for (std::uint32_t rel = 0; rel < p.relation.size(); ++rel) {
    const FiringSet& r = p.relation[rel];
    if (!members_enabled(c, r)) continue;
    auto aug = try_augment(c, r);
    if (!aug) continue;
    out.push_back({rel, successor_from(p, c, r, *aug)});
  }
  return out;
}

// Deduplication over (marking, domain), keys are indices into the class store.
struct ClassTable {
  std::vector<StateClass>* classes;
  std::vector<std::size_t> hashes;

  struct H {
    const ClassTable* t;
    std::size_t operator()(std::uint32_t i) const { return t->hashes[i]; }
  };
  struct E {
    const ClassTable* t;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return class_equal((*t->classes)[a], (*t->classes)[b]);
    }
  };
  std::unordered_map<std::uint32_t, std::uint32_t, H, E> seen;

  explicit ClassTable(std::vector<StateClass>* cs)
      : classes(cs), seen(16, H{this}, E{this}) {}

  // Returns (index, inserted). Takes ownership of cls on insertion.
  std::pair<std::uint32_t, bool> intern(StateClass&& cls) {
    auto idx = static_cast<std::uint32_t>(classes->size());
    classes->push_back(std::move(cls));
    hashes.push_back(class_hash(classes->back()));
    auto [it, fresh] = seen.emplace(idx, idx);
    if (!fresh) {
      classes->pop_back();
      hashes.pop_back();
      return {it->second, false};
    }
    return {idx, true};
  }
};

}  // namespace

StateClass initial_class(const Ptpn& p) {
  StateClass c;
  c.marking = p.net.initial;
  c.enabled = enabled_set(p.net, c.marking);
  c.domain = Dbm(static_cast<std::uint32_t>(c.enabled.size()) + 1);
  for (std::uint32_t i = 0; i < c.enabled.size(); ++i) {
    const TimeInterval& iv = p.net.transitions[c.enabled[i]].interval;
    c.domain.at(i + 1, 0) = iv.upper_bound();
    c.domain.at(0, i + 1) = iv.lower_bound();
  }
  c.domain.canonicalize();
  return c;
}

std::vector<std::uint32_t> firable_sets(const Ptpn& p, const StateClass& c) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t rel = 0; rel < p.relation.size(); ++rel) {
    const FiringSet& r = p.relation[rel];
    if (members_enabled(c, r) && try_augment(c, r)) out.push_back(rel);
  }
  return out;
}

StateClass successor_class(const Ptpn& p, const StateClass& c, std::uint32_t rel) {
  const FiringSet& r = p.relation.at(rel);
  if (!members_enabled(c, r))
    throw ModelError(ModelError::Kind::NotFirable, "firing set not enabled in this class");
  auto aug = try_augment(c, r);
  if (!aug)
    throw ModelError(ModelError::Kind::NotFirable, "firing set not firable in this class");
  return successor_from(p, c, r, *aug);
}

bool class_equal(const StateClass& a, const StateClass& b) {
  return a.marking == b.marking && a.domain == b.domain;
}

std::size_t class_hash(const StateClass& c) {
  return hash_combine(hash_value(c.marking), c.domain.hash());
}

BuildResult build_scg(const Ptpn& p, const BuildLimits& limits) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  BuildResult res;
  ScGraph& g = res.graph;
  ClassTable table(&g.classes);
  table.intern(initial_class(p));

  const unsigned threads = std::max(1u, limits.threads);
  std::size_t pos = 0;  // expansion cursor; classes are expanded in index order

  if (threads == 1) {
    while (pos < g.classes.size()) {
      if (g.classes.size() >= limits.max_classes || elapsed() > limits.budget_seconds) {
        res.complete = false;
        break;
      }
      StateClass cur = g.classes[pos];  // copy: the store may grow underneath
      for (auto& [rel, cls] : expand(p, cur)) {
        auto [dst, _] = table.intern(std::move(cls));
        g.edges.push_back({static_cast<std::uint32_t>(pos), rel, dst});
      }
      ++pos;
    }
  } else {
    std::size_t level_begin = 0;
    std::size_t level_end = g.classes.size();
    while (level_begin < level_end) {
      if (g.classes.size() >= limits.max_classes || elapsed() > limits.budget_seconds) {
        res.complete = false;
        break;
      }
      const std::size_t n = level_end - level_begin;
      std::vector<std::vector<Expansion>> results(n);
      std::atomic<std::size_t> next{0};
      std::exception_ptr err;
      std::mutex err_mu;
      auto worker = [&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            results[i] = expand(p, g.classes[level_begin + i]);
          } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!err) err = std::current_exception();
            return;
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      if (err) std::rethrow_exception(err);

      for (std::size_t i = 0; i < n; ++i) {
        auto srcv = static_cast<std::uint32_t>(level_begin + i);
        for (auto& [rel, cls] : results[i]) {
          auto [dst, _] = table.intern(std::move(cls));
          g.edges.push_back({srcv, rel, dst});
        }
      }
      pos = level_end;
      level_begin = level_end;
      level_end = g.classes.size();
    }
    if (res.complete) pos = level_end;  // loop drained everything
  }

  res.expanded = pos;
  res.seconds = elapsed();

  g.first_edge.assign(g.classes.size() + 1, 0);
  for (const auto& e : g.edges) ++g.first_edge[e.src + 1];
  for (std::size_t i = 1; i < g.first_edge.size(); ++i) g.first_edge[i] += g.first_edge[i - 1];
  return res;
}

ScgStats scg_stats(const ScGraph& g) {
  ScgStats s;
  s.classes = g.classes.size();
  s.edges = g.edges.size();

  struct MH {
    const ScGraph* g;
    std::size_t operator()(std::uint32_t i) const { return hash_value(g->classes[i].marking); }
  };
  struct ME {
    const ScGraph* g;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return g->classes[a].marking == g->classes[b].marking;
    }
  };
  struct DH {
    const ScGraph* g;
    std::size_t operator()(std::uint32_t i) const { return g->classes[i].domain.hash(); }
  };
  struct DE {
    const ScGraph* g;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return g->classes[a].domain == g->classes[b].domain;
    }
  };
  std::unordered_set<std::uint32_t, MH, ME> markings(16, MH{&g}, ME{&g});
  std::unordered_set<std::uint32_t, DH, DE> domains(16, DH{&g}, DE{&g});
  for (std::uint32_t i = 0; i < g.classes.size(); ++i) {
    markings.insert(i);
    domains.insert(i);
  }
  s.markings = markings.size();
  s.domains = domains.size();
  return s;
}

}  // namespace tpn
