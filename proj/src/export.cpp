#include "tpn/export.hpp"

#include <sstream>

#include <json.hpp>

namespace tpn {
namespace {

std::string edge_label(const Ptpn& p, const ScEdge& e) {
  const std::string& l = set_label(p.net, p.relation[e.rel]);
  return l.empty() ? "tau" : l;
}

}  // namespace

std::string to_aut(const Ptpn& p, const ScGraph& g) {
  std::ostringstream out;
  out << "des (0, " << g.edges.size() << ", " << g.classes.size() << ")\n";
  for (const auto& e : g.edges)
    out << "(" << e.src << ", \"" << edge_label(p, e) << "\", " << e.dst << ")\n";
  return out.str();
}

std::string to_dot(const Ptpn& p, const ScGraph& g, std::size_t expanded) {
  std::ostringstream out;
  out << "digraph scg {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::uint32_t c = 0; c < g.classes.size(); ++c) {
    out << "  n" << c << " [label=\"" << c << "\"";
    if (c < expanded && g.out_degree(c) == 0)
      out << ", shape=doublecircle, style=filled, fillcolor=\"#d64545\"";
    else if (c >= expanded)
      out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& e : g.edges)
    out << "  n" << e.src << " -> n" << e.dst << " [label=\"" << edge_label(p, e) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string report_json(const Ptpn& p, const BuildResult& built,
                        const std::optional<VerdictReport>& verdict) {
  ScgStats stats = scg_stats(built.graph);
  nlohmann::json j;
  j["net"] = p.net.name;
  j["classes"] = stats.classes;
  j["markings"] = stats.markings;
  j["domains"] = stats.domains;
  j["edges"] = stats.edges;
  j["complete"] = built.complete;
  j["expanded"] = built.expanded;
  j["seconds"] = built.seconds;
  if (verdict) {
    j["verdict"] = to_string(verdict->verdict);
    j["detail"] = verdict->detail;
    j["witness_path"] = verdict->path;
  }
  return j.dump(2) + "\n";
}

}  // namespace tpn
