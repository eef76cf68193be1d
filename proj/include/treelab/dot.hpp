#pragma once

#include <string>
#include <string_view>

#include "treelab/tree.hpp"

namespace treelab {

/// Graphviz rendering. Region tags become fill colors; digraph nodes whose
/// origin is both trees (merged quotient classes) get a double border.
std::string to_dot(const Tree& t, std::string_view graph_name = "T");
std::string to_dot(const Digraph& g, std::string_view graph_name = "G");

}  // namespace treelab
