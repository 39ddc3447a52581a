#include "skel/dot.hpp"

#include <sstream>

namespace skel {

namespace {

std::string node(ProcessId p) { return "p" + std::to_string(p); }

}  // namespace

std::string dot_of(const RoundGraph& g, const std::string& name,
                   bool include_self_loops) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  for (ProcessId p = 0; p < g.n(); ++p) {
    out << "  " << node(p) << ";\n";
  }
  for (const Edge& e : g.edges()) {
    if (e.from == e.to && !include_self_loops) continue;
    out << "  " << node(e.from) << " -> " << node(e.to) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string dot_of(const ApproxGraph& g, const std::string& name,
                   bool include_self_loops) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  for (ProcessId p : g.vertices) {
    out << "  " << node(p) << ";\n";
  }
  for (const auto& [edge, label] : g.labeled_edges) {
    if (edge.from == edge.to && !include_self_loops) continue;
    out << "  " << node(edge.from) << " -> " << node(edge.to) << " [label=\""
        << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace skel
