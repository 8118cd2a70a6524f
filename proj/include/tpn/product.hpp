#pragma once

#include <string>
#include <vector>

#include "tpn/net.hpp"

namespace tpn {

// Label set used when composing two nets. Either the intersection of the two
// operands' alphabets (the default) or an explicit list.
struct SyncPolicy {
  bool intersection = true;
  std::vector<std::string> labels;  // used when !intersection; may be empty
};

// A firing set of one operand that found no same-labelled partner on the other
// side. Such sets do not survive composition; the owning transitions stay in
// the net but can never fire through the relation.
struct DroppedSet {
  int side;  // 1 or 2
  std::string label;
  std::vector<std::string> transitions;  // names after renaming
};

struct ProductResult {
  Ptpn ptpn;
  std::vector<DroppedSet> dropped;
};

// Sorted intersection of the two visible alphabets.
std::vector<std::string> default_sync_labels(const Net& a, const Net& b);

// Synchronous product over the label set `labels`. Places and transitions are
// juxtaposed; sets labelled inside `labels` are paired across operands (one
// combined set per pair), all other sets are kept as they are. Names are
// disambiguated with ".1"/".2" suffixes: always for transitions that carry a
// label from `labels` present in both alphabets, and for anything whose name
// exists on both sides.
ProductResult binary_product(const Ptpn& a, const Ptpn& b, const std::vector<std::string>& labels);

// Left fold of binary products. policies[i] governs the step that adds
// components[i]; policies[0] is ignored. policies may be empty (all defaults).
// Explicit labels must exist in both operand alphabets at their step.
ProductResult chain_product(const std::vector<Ptpn>& components,
                            const std::vector<SyncPolicy>& policies = {});

}  // namespace tpn
