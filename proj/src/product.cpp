#include "tpn/product.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace tpn {
namespace {

std::unordered_set<std::string> all_names(const Net& n) {
  std::unordered_set<std::string> s;
  for (const auto& p : n.places) s.insert(p);
  for (const auto& t : n.transitions) s.insert(t.name);
  return s;
}

bool contains(const std::vector<std::string>& sorted, const std::string& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

std::vector<std::string> default_sync_labels(const Net& a, const Net& b) {
  auto la = a.alphabet();
  auto lb = b.alphabet();
  std::vector<std::string> out;
  std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(out));
  return out;
}

ProductResult binary_product(const Ptpn& a, const Ptpn& b, const std::vector<std::string>& labels) {
  std::vector<std::string> L = labels;
  std::sort(L.begin(), L.end());
  L.erase(std::unique(L.begin(), L.end()), L.end());

  const Net& n1 = a.net;
  const Net& n2 = b.net;
  auto names1 = all_names(n1);
  auto names2 = all_names(n2);
  auto alpha1 = n1.alphabet();
  auto alpha2 = n2.alphabet();

  auto collides = [&](const std::string& nm) { return names1.count(nm) && names2.count(nm); };
  // A transition synchronizing on a label both sides can offer always gets a
  // provenance suffix, so members of a combined set stay distinguishable.
  auto sync_suffix = [&](const Transition& t) {
    return !t.silent() && contains(L, t.label) && contains(alpha1, t.label) &&
           contains(alpha2, t.label);
  };

  std::unordered_set<std::string> used;
  auto claim = [&](std::string nm, const char* suffix) {
    while (used.count(nm)) nm += suffix;
    used.insert(nm);
    return nm;
  };

  NetBuilder nb;
  nb.name(n1.name + "." + n2.name);

  std::vector<std::string> pname1(n1.places.size()), pname2(n2.places.size());
  std::vector<std::string> tname1(n1.transitions.size()), tname2(n2.transitions.size());

  for (std::size_t i = 0; i < n1.places.size(); ++i) {
    pname1[i] = claim(collides(n1.places[i]) ? n1.places[i] + ".1" : n1.places[i], ".1");
    nb.place(pname1[i], n1.initial.tokens[i]);
  }
  for (std::size_t i = 0; i < n2.places.size(); ++i) {
    pname2[i] = claim(collides(n2.places[i]) ? n2.places[i] + ".2" : n2.places[i], ".2");
    nb.place(pname2[i], n2.initial.tokens[i]);
  }
  for (std::size_t i = 0; i < n1.transitions.size(); ++i) {
    const auto& t = n1.transitions[i];
    bool suffix = collides(t.name) || sync_suffix(t);
    tname1[i] = claim(suffix ? t.name + ".1" : t.name, ".1");
    nb.transition(tname1[i], t.label, t.interval);
    for (const auto& arc : t.pre) nb.pre(tname1[i], pname1[arc.place], arc.weight);
    for (const auto& arc : t.post) nb.post(tname1[i], pname1[arc.place], arc.weight);
  }
  for (std::size_t i = 0; i < n2.transitions.size(); ++i) {
    const auto& t = n2.transitions[i];
    bool suffix = collides(t.name) || sync_suffix(t);
    tname2[i] = claim(suffix ? t.name + ".2" : t.name, ".2");
    nb.transition(tname2[i], t.label, t.interval);
    for (const auto& arc : t.pre) nb.pre(tname2[i], pname2[arc.place], arc.weight);
    for (const auto& arc : t.post) nb.post(tname2[i], pname2[arc.place], arc.weight);
  }

  ProductResult res;
  res.ptpn.net = nb.build();
  const auto shift = static_cast<std::uint32_t>(n1.transitions.size());

  // Sets whose label is outside L pass through; sets labelled in L are paired
  // with every same-labelled set of the other operand.
  std::map<std::string, std::vector<const FiringSet*>> by_label1, by_label2;
  auto route = [&](const Ptpn& side, std::map<std::string, std::vector<const FiringSet*>>& bucket,
                   std::uint32_t off) {
    for (const auto& r : side.relation) {
      const std::string& l = set_label(side.net, r);
      if (!l.empty() && contains(L, l)) {
        bucket[l].push_back(&r);
      } else {
        FiringSet mapped;
        for (auto t : r) mapped.push_back(t + off);
        res.ptpn.relation.push_back(std::move(mapped));
      }
    }
  };
  route(a, by_label1, 0);
  route(b, by_label2, shift);

  for (const auto& l : L) {
    auto i1 = by_label1.find(l);
    auto i2 = by_label2.find(l);
    bool has1 = i1 != by_label1.end();
    bool has2 = i2 != by_label2.end();
    if (has1 && has2) {
      for (const FiringSet* r1 : i1->second) {
        for (const FiringSet* r2 : i2->second) {
          FiringSet combined = *r1;
          for (auto t : *r2) combined.push_back(t + shift);
          std::sort(combined.begin(), combined.end());
          res.ptpn.relation.push_back(std::move(combined));
        }
      }
    } else if (has1 || has2) {
      for (const FiringSet* r : has1 ? i1->second : i2->second) {
        DroppedSet d;
        d.side = has1 ? 1 : 2;
        d.label = l;
        for (auto t : *r) d.transitions.push_back(has1 ? tname1[t] : tname2[t]);
        res.dropped.push_back(std::move(d));
      }
    }
  }

  normalize_relation(res.ptpn.relation);
  validate_ptpn(res.ptpn);
  return res;
}

ProductResult chain_product(const std::vector<Ptpn>& components,
                            const std::vector<SyncPolicy>& policies) {
  if (components.empty()) throw ModelError(ModelError::Kind::EmptySet, "no components to compose");
  ProductResult acc;
  acc.ptpn = components[0];
  for (std::size_t i = 1; i < components.size(); ++i) {
    SyncPolicy pol = i < policies.size() ? policies[i] : SyncPolicy{};
    std::vector<std::string> L;
    if (pol.intersection) {
      L = default_sync_labels(acc.ptpn.net, components[i].net);
    } else {
      L = pol.labels;
      auto la = acc.ptpn.net.alphabet();
      auto lb = components[i].net.alphabet();
      for (const auto& l : L) {
        if (!contains(la, l) || !contains(lb, l))
          throw ModelError(ModelError::Kind::LabelMismatch,
                           "sync label '" + l + "' missing from an operand at step " +
                               std::to_string(i) + " (" + components[i].net.name + ")");
      }
    }
    auto step = binary_product(acc.ptpn, components[i], L);
    acc.ptpn = std::move(step.ptpn);
    for (auto& d : step.dropped) acc.dropped.push_back(std::move(d));
  }
  return acc;
}

}  // namespace tpn
