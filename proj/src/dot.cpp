#include "treelab/dot.hpp"

namespace treelab {

namespace {

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string_view fill_color(RegionTag tag) {
  switch (tag) {
    case RegionTag::spine: return "gray85";
    case RegionTag::P: return "lightblue";
    case RegionTag::R: return "palegreen";
    case RegionTag::S: return "lightsalmon";
    case RegionTag::A: return "khaki";
    case RegionTag::B: return "plum";
    case RegionTag::none: break;
  }
  return {};
}

}  // namespace

std::string to_dot(const Digraph& g, std::string_view graph_name) {
  std::string out = "digraph " + quoted(graph_name) + " {\n";
  for (const auto& node : g.nodes) {
    out += "  " + quoted(node.name);
    std::string attrs;
    if (auto color = fill_color(node.region); !color.empty()) {
      attrs += "style=filled, fillcolor=" + std::string(color);
    }
    if (node.origin == 3) attrs += std::string(attrs.empty() ? "" : ", ") + "peripheries=2";
    if (!attrs.empty()) out += " [" + attrs + "]";
    out += ";\n";
  }
  for (auto [a, b] : g.arcs) {
    out += "  " + quoted(g.nodes.at(a).name) + " -> " + quoted(g.nodes.at(b).name) + ";\n";
  }
  return out + "}\n";
}

std::string to_dot(const Tree& t, std::string_view graph_name) { return to_dot(t.to_digraph(), graph_name); }

}  // namespace treelab
