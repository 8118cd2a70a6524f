#pragma once

#include <optional>
#include <string>

#include "tpn/analysis.hpp"
#include "tpn/scg.hpp"

namespace tpn {

// Aldebaran transition system: header "des (0, <edges>, <states>)" then one
// "(<src>, \"<label>\", <dst>)" line per edge, silent sets rendered as tau.
std::string to_aut(const Ptpn& p, const ScGraph& g);

// Graphviz rendering of the class graph. Dead classes (expanded, no
// successors) are filled red and double-edged; classes past the expansion
// cut are dashed.
std::string to_dot(const Ptpn& p, const ScGraph& g, std::size_t expanded);

// Machine-readable run report; shape is pinned by schemas/report.schema.json.
std::string report_json(const Ptpn& p, const BuildResult& built,
                        const std::optional<VerdictReport>& verdict);

}  // namespace tpn
