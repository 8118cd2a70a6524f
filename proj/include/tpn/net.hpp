#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpn/bounds.hpp"

namespace tpn {

struct ModelError : std::runtime_error {
  enum class Kind {
    DuplicateName,
    UnknownReference,
    BadWeight,
    EmptySet,
    LabelMismatch,
    SharedInputPlace,
    NotEnabled,
    NotFirable,
  };
  Kind kind;
  ModelError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct Marking {
  std::vector<std::uint32_t> tokens;  // indexed by place

  std::uint32_t operator[](std::uint32_t p) const { return tokens[p]; }
  bool covers(const Marking& other) const {
    for (std::size_t i = 0; i < tokens.size(); ++i)
      if (tokens[i] < other.tokens[i]) return false;
    return true;
  }
  friend bool operator==(const Marking& a, const Marking& b) { return a.tokens == b.tokens; }
  friend bool operator!=(const Marking& a, const Marking& b) { return !(a == b); }
  friend bool operator<(const Marking& a, const Marking& b) { return a.tokens < b.tokens; }
};

struct Arc {
  std::uint32_t place = 0;
  std::uint32_t weight = 1;
  friend bool operator==(const Arc& a, const Arc& b) = default;
};

struct Transition {
  std::string name;
  std::string label;       // empty = silent
  TimeInterval interval;   // defaults to [0, inf)
  std::vector<Arc> pre;    // sorted by place index
  std::vector<Arc> post;   // sorted by place index
  bool silent() const { return label.empty(); }
};

// A set of transitions that fire simultaneously. Sorted, unique indices.
using FiringSet = std::vector<std::uint32_t>;

// Place and transition names share one namespace; nets are built through
// NetBuilder which enforces that and index-resolves all arcs.
struct Net {
  std::string name;
  std::vector<std::string> places;
  std::vector<Transition> transitions;
  Marking initial;
  std::map<std::string, std::uint32_t, std::less<>> place_index;
  std::map<std::string, std::uint32_t, std::less<>> transition_index;

  std::optional<std::uint32_t> find_place(std::string_view n) const {
    auto it = place_index.find(n);
    if (it == place_index.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::uint32_t> find_transition(std::string_view n) const {
    auto it = transition_index.find(n);
    if (it == transition_index.end()) return std::nullopt;
    return it->second;
  }
  // Sorted distinct non-silent labels.
  std::vector<std::string> alphabet() const;
};

class NetBuilder {
 public:
  NetBuilder() = default;
  explicit NetBuilder(std::string name) { net_.name = std::move(name); }

  NetBuilder& name(std::string n) {
    net_.name = std::move(n);
    return *this;
  }
  NetBuilder& place(const std::string& name, std::uint32_t tokens = 0);
  NetBuilder& transition(const std::string& name, std::string label = "",
                         TimeInterval iv = TimeInterval{});
  // Arcs may be declared repeatedly; weights accumulate.
  NetBuilder& pre(const std::string& transition, const std::string& place,
                  std::uint32_t weight = 1);
  NetBuilder& post(const std::string& transition, const std::string& place,
                   std::uint32_t weight = 1);
  Net build();

 private:
  void check_fresh(const std::string& name);
  Transition& find(const std::string& transition);
  std::uint32_t place_ref(const std::string& place);

  Net net_;
  bool built_ = false;
};

struct Ptpn {
  Net net;
  std::vector<FiringSet> relation;  // canonically sorted, each set sorted
};

// Core marking semantics ------------------------------------------------

bool is_enabled(const Net& net, const Marking& m, std::uint32_t t);
std::vector<std::uint32_t> enabled_set(const Net& net, const Marking& m);

struct FireResult {
  Marking next;
  // Transitions enabled at next that were already enabled at the intermediate
  // marking (after removing the set's inputs) and are not in the fired set;
  // they keep their timing. Everything else enabled at next is fresh.
  std::vector<std::uint32_t> persistent;
  std::vector<std::uint32_t> newly_enabled;
};

FireResult fire_firing_set(const Net& net, const Marking& m, const FiringSet& r);

// Checks sortedness/uniqueness, shared label, and pairwise disjoint input
// places. Throws ModelError on violation.
void validate_firing_set(const Net& net, const FiringSet& r);

// Label shared by the set's members ("" for silent sets).
const std::string& set_label(const Net& net, const FiringSet& r);

// Sorts members, orders and dedupes the set list.
void normalize_relation(std::vector<FiringSet>& relation);

std::vector<FiringSet> lifted_relation(const Net& net);
Ptpn lift_to_ptpn(Net net);
void validate_ptpn(const Ptpn& p);

std::size_t hash_value(const Marking& m);

}  // namespace tpn
