#pragma once

#include <cstddef>
#include <vector>

#include "treelab/errors.hpp"
#include "treelab/tree.hpp"

namespace treelab {

inline constexpr std::size_t default_enumeration_cap = 14;

enum class EnumerationStrategy {
  level_sequence,  // Beyer-Hedetniemi successor on canonical level sequences
  grow_and_dedup,  // attach a leaf everywhere to every (n-1)-tree, dedup by code
};

/// One representative per isomorphism class of unlabeled rooted trees with n
/// nodes, sorted by canonical code. Nodes are named n0, n1, ... in preorder.
/// Results are computed once per n and shared; safe to call concurrently.
const std::vector<Tree>& enumerate_trees(std::size_t n, std::size_t cap = default_enumeration_cap);

/// Uncached generation with an explicit strategy.
std::vector<Tree> generate_trees(std::size_t n, EnumerationStrategy strategy);

}  // namespace treelab
