#include "tpn/net.hpp"

#include <algorithm>
#include <set>

namespace tpn {

std::vector<std::string> Net::alphabet() const {
  std::set<std::string> labels;
  for (const auto& t : transitions)
    if (!t.silent()) labels.insert(t.label);
  return {labels.begin(), labels.end()};
}

void NetBuilder::check_fresh(const std::string& name) {
  if (net_.place_index.count(name) || net_.transition_index.count(name))
    throw ModelError(ModelError::Kind::DuplicateName, "duplicate name: " + name);
}

NetBuilder& NetBuilder::place(const std::string& name, std::uint32_t tokens) {
  check_fresh(name);
  net_.place_index.emplace(name, static_cast<std::uint32_t>(net_.places.size()));
  net_.places.push_back(name);
  net_.initial.tokens.push_back(tokens);
  return *this;
}

NetBuilder& NetBuilder::transition(const std::string& name, std::string label, TimeInterval iv) {
  check_fresh(name);
  net_.transition_index.emplace(name, static_cast<std::uint32_t>(net_.transitions.size()));
  Transition t;
  t.name = name;
  t.label = std::move(label);
  t.interval = iv;
  net_.transitions.push_back(std::move(t));
  return *this;
}

Transition& NetBuilder::find(const std::string& transition) {
  auto it = net_.transition_index.find(transition);
  if (it == net_.transition_index.end())
    throw ModelError(ModelError::Kind::UnknownReference, "unknown transition: " + transition);
  return net_.transitions[it->second];
}

std::uint32_t NetBuilder::place_ref(const std::string& place) {
  auto it = net_.place_index.find(place);
  if (it == net_.place_index.end())
    throw ModelError(ModelError::Kind::UnknownReference, "unknown place: " + place);
  return it->second;
}

static void add_arc(std::vector<Arc>& arcs, std::uint32_t place, std::uint32_t weight) {
  if (weight == 0) throw ModelError(ModelError::Kind::BadWeight, "arc weight must be >= 1");
  for (auto& a : arcs) {
    if (a.place == place) {
      a.weight += weight;
      return;
    }
  }
  arcs.push_back(Arc{place, weight});
}

NetBuilder& NetBuilder::pre(const std::string& transition, const std::string& place,
                            std::uint32_t weight) {
  add_arc(find(transition).pre, place_ref(place), weight);
  return *this;
}

NetBuilder& NetBuilder::post(const std::string& transition, const std::string& place,
                             std::uint32_t weight) {
  add_arc(find(transition).post, place_ref(place), weight);
  return *this;
}

Net NetBuilder::build() {
  if (built_) throw std::logic_error("NetBuilder::build called twice");
  built_ = true;
  auto by_place = [](const Arc& a, const Arc& b) { return a.place < b.place; };
  for (auto& t : net_.transitions) {
    std::sort(t.pre.begin(), t.pre.end(), by_place);
    std::sort(t.post.begin(), t.post.end(), by_place);
  }
  return std::move(net_);
}

bool is_enabled(const Net& net, const Marking& m, std::uint32_t t) {
  for (const auto& a : net.transitions[t].pre)
    if (m.tokens[a.place] < a.weight) return false;
  return true;
}

std::vector<std::uint32_t> enabled_set(const Net& net, const Marking& m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t)
    if (is_enabled(net, m, t)) out.push_back(t);
  return out;
}

FireResult fire_firing_set(const Net& net, const Marking& m, const FiringSet& r) {
  if (r.empty()) throw ModelError(ModelError::Kind::EmptySet, "empty firing set");
  for (auto t : r) {
    if (t >= net.transitions.size())
      throw ModelError(ModelError::Kind::UnknownReference, "transition index out of range");
    if (!is_enabled(net, m, t))
      throw ModelError(ModelError::Kind::NotEnabled,
                       "transition not enabled: " + net.transitions[t].name);
  }

  FireResult res;
  Marking mid = m;
  for (auto t : r)
    for (const auto& a : net.transitions[t].pre) {
      if (mid.tokens[a.place] < a.weight)
        throw ModelError(ModelError::Kind::SharedInputPlace,
                         "firing set consumes more tokens than available from place " +
                             net.places[a.place]);
      mid.tokens[a.place] -= a.weight;
    }
  res.next = mid;
  for (auto t : r)
    for (const auto& a : net.transitions[t].post) res.next.tokens[a.place] += a.weight;

  for (std::uint32_t t = 0; t < net.transitions.size(); ++t) {
    if (!is_enabled(net, res.next, t)) continue;
    bool in_set = std::binary_search(r.begin(), r.end(), t);
    if (!in_set && is_enabled(net, mid, t))
      res.persistent.push_back(t);
    else
      res.newly_enabled.push_back(t);
  }
  return res;
}

void validate_firing_set(const Net& net, const FiringSet& r) {
  if (r.empty()) throw ModelError(ModelError::Kind::EmptySet, "empty firing set");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= net.transitions.size())
      throw ModelError(ModelError::Kind::UnknownReference, "transition index out of range");
    if (i > 0 && r[i] <= r[i - 1])
      throw ModelError(ModelError::Kind::EmptySet, "firing set must be sorted and unique");
  }
  const std::string& label = net.transitions[r[0]].label;
  for (auto t : r)
    if (net.transitions[t].label != label)
      throw ModelError(ModelError::Kind::LabelMismatch,
                       "firing set mixes labels: " + net.transitions[r[0]].name + " / " +
                           net.transitions[t].name);
  // Pairwise input disjointness: no place may feed two members.
  std::set<std::uint32_t> seen;
  for (auto t : r)
    for (const auto& a : net.transitions[t].pre)
      if (!seen.insert(a.place).second)
        throw ModelError(ModelError::Kind::SharedInputPlace,
                         "firing set members share input place " + net.places[a.place]);
}

const std::string& set_label(const Net& net, const FiringSet& r) {
  return net.transitions.at(r.at(0)).label;
}

void normalize_relation(std::vector<FiringSet>& relation) {
  for (auto& r : relation) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  std::sort(relation.begin(), relation.end());
  relation.erase(std::unique(relation.begin(), relation.end()), relation.end());
}

std::vector<FiringSet> lifted_relation(const Net& net) {
  std::vector<FiringSet> r;
  r.reserve(net.transitions.size());
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t) r.push_back({t});
  return r;
}

Ptpn lift_to_ptpn(Net net) {
  Ptpn p;
  p.relation = lifted_relation(net);
  p.net = std::move(net);
  return p;
}

void validate_ptpn(const Ptpn& p) {
  for (std::size_t i = 0; i < p.relation.size(); ++i) {
    validate_firing_set(p.net, p.relation[i]);
    if (i > 0 && !(p.relation[i - 1] < p.relation[i]))
      throw ModelError(ModelError::Kind::EmptySet, "relation must be sorted and unique");
  }
}

std::size_t hash_value(const Marking& m) {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : m.tokens) h = hash_combine(h, v);
  return h;
}

}  // namespace tpn
